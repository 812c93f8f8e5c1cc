//! Satellite power budget.
//!
//! All satellite power goes to pair sources, each drawing `P_r` and emitting
//! `N_p` pairs per second.

use serde::{Deserialize, Serialize};

use crate::model::SatelliteSpec;

/// Whether fractional sources are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceModel {
    /// `P_s / P_r` sources, fractional counts allowed.
    #[default]
    Continuous,
    /// Whole sources only: `floor(P_s / P_r)` fit in a budget, and a rate
    /// needs `ceil(R / N_p)` of them.
    Integer,
}

/// Pair generation capacity `S_PG = P_s N_p / P_r`.
pub fn generation_capacity(sat: &SatelliteSpec) -> f64 {
    generation_capacity_with(sat, SourceModel::Continuous)
}

pub fn generation_capacity_with(sat: &SatelliteSpec, model: SourceModel) -> f64 {
    let sources = sat.power() / sat.source_power();
    let sources = match model {
        SourceModel::Continuous => sources,
        SourceModel::Integer => sources.floor(),
    };
    sources * sat.source_brightness()
}

/// Satellite power needed for a pair generation rate, `R_PG P_r / N_p`.
pub fn required_power(pair_rate: f64, sat: &SatelliteSpec) -> f64 {
    required_power_with(pair_rate, sat, SourceModel::Continuous)
}

pub fn required_power_with(pair_rate: f64, sat: &SatelliteSpec, model: SourceModel) -> f64 {
    let sources = pair_rate / sat.source_brightness();
    let sources = match model {
        SourceModel::Continuous => sources,
        SourceModel::Integer => sources.ceil(),
    };
    sources * sat.source_power()
}

/// Satellite-limited logical pair rate at power `power`:
/// `R_LP = P_s N_p eta / (D^2 chi P_r)`.
pub fn power_to_logical_rate(power: f64, distance: u32, chi: u64, eta: f64, sat: &SatelliteSpec) -> f64 {
    let d = f64::from(distance);
    power * sat.source_brightness() * eta / (d * d * chi as f64 * sat.source_power())
}
