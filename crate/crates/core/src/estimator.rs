//! End-to-end rate estimates, power sweeps and gate-time comparisons.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{self, DistanceSolution, DistanceSolver, SolverMode};
use crate::error::{Error, Result};
use crate::link::{self, TailMethod};
use crate::model::{reference_tables, Binding, PurificationPlan, RateReport, Scenario};
use crate::power;
use crate::purify;

/// How the required pair generation rate is derived from `R_IP+P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRateMethod {
    /// `R_PG = R_IP+P / eta`.
    #[default]
    Markov,
    /// Smallest attempt count delivering `ceil(R_IP+P)` pairs with the
    /// link's confidence.
    Solver(TailMethod),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EstimateOptions {
    pub distance: DistanceSolver,
    pub pair_rate: PairRateMethod,
}

impl EstimateOptions {
    pub fn with_mode(mode: SolverMode) -> Self {
        Self {
            distance: DistanceSolver::new(mode),
            ..Self::default()
        }
    }
}

/// The power-independent part of an estimate: code distance and
/// purification plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Resources {
    pub distance: DistanceSolution,
    pub plan: PurificationPlan,
}

pub fn resources(scenario: &Scenario, options: &EstimateOptions) -> Result<Resources> {
    let distance = options.distance.solve(scenario.target_failure(), scenario.code())?;
    let plan = purify::purification_factor(scenario.purification())?;
    Ok(Resources { distance, plan })
}

/// Estimate with default options (paper-rounded distance, Markov pair rate).
pub fn estimate(scenario: &Scenario) -> Result<RateReport> {
    estimate_with(scenario, &EstimateOptions::default())
}

pub fn estimate_with(scenario: &Scenario, options: &EstimateOptions) -> Result<RateReport> {
    let res = resources(scenario, options)?;
    let d = res.distance.distance;
    let chi = res.plan.factor_chi();
    let eta = scenario.link().eta();
    let sat = scenario.satellite();

    let rate_logical = code::logical_pair_rate_hw(d, scenario.code().gate_time());
    let rate_ideal = code::ideal_pair_rate(d, rate_logical);
    let rate_with_purification = rate_ideal * chi as f64;
    let rate_generation = match options.pair_rate {
        PairRateMethod::Markov => link::markov_rate(rate_with_purification, eta),
        PairRateMethod::Solver(method) => {
            let needed = rate_with_purification.ceil();
            if needed > u64::MAX as f64 / 8.0 {
                return Err(Error::invalid(
                    "rate_with_purification_RIPP",
                    "too large for the attempt solver",
                ));
            }
            link::min_attempts(needed as u64, eta, scenario.link().confidence(), method)? as f64
        }
    };
    let required_power = power::required_power(rate_generation, sat);
    let clock_speed = power::power_to_logical_rate(sat.power(), d, chi, eta, sat);
    let (effective_rate, binding) = if rate_logical < clock_speed {
        (rate_logical, Binding::Hardware)
    } else {
        (clock_speed, Binding::Satellite)
    };

    Ok(RateReport {
        label: scenario.label().to_string(),
        distance: d,
        failure_at_distance: res.distance.failure_at_distance,
        factor_chi: chi,
        eta,
        gate_time: scenario.code().gate_time(),
        rate_logical,
        rate_ideal,
        rate_with_purification,
        rate_generation,
        required_power,
        available_power: sat.power(),
        clock_speed,
        effective_rate,
        binding,
    })
}

/// A sweep sample: satellite-limited logical rate at one power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub scenario: String,
    #[serde(rename = "P_s_watts")]
    pub power: f64,
    #[serde(rename = "R_LP_per_s")]
    pub rate: f64,
    /// True at the scenario's own available power.
    pub marker: bool,
}

/// `per_decade` log-spaced powers from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, per_decade: u32) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && min.is_finite() && max.is_finite()) || per_decade == 0 {
        return Err(Error::invalid(
            "powers",
            format!("bad grid {min}..{max} @ {per_decade}/decade"),
        ));
    }
    let (lo, hi) = (min.log10(), max.log10());
    let steps = ((hi - lo) * f64::from(per_decade)).round().max(1.0) as usize;
    Ok((0..=steps)
        .map(|i| {
            if i == steps {
                max
            } else {
                10f64.powf(lo + (hi - lo) * i as f64 / steps as f64)
            }
        })
        .collect())
}

pub const DEFAULT_SWEEP_MIN: f64 = 1.0;
pub const DEFAULT_SWEEP_MAX: f64 = 1e5;
pub const DEFAULT_PER_DECADE: u32 = 200;

/// 1 W to 100 kW, 200 points per decade.
pub fn default_grid() -> Vec<f64> {
    log_grid(DEFAULT_SWEEP_MIN, DEFAULT_SWEEP_MAX, DEFAULT_PER_DECADE).expect("default grid is valid")
}

/// Adds `marker` to a sorted grid unless already present.
pub fn with_marker(mut grid: Vec<f64>, marker: f64) -> Vec<f64> {
    if let Err(pos) = grid.binary_search_by(|p| p.total_cmp(&marker)) {
        grid.insert(pos, marker);
    }
    grid
}

/// Satellite-limited logical rate at every grid power. Evaluated in
/// parallel; output order follows the grid.
pub fn sweep_power(scenario: &Scenario, powers: &[f64], options: &EstimateOptions) -> Result<Vec<SweepPoint>> {
    if powers.is_empty() {
        return Err(Error::invalid("powers", "grid is empty"));
    }
    if powers.iter().any(|p| !(p.is_finite() && *p > 0.0)) || powers.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(
            "powers",
            "grid must be positive and strictly increasing",
        ));
    }
    let res = resources(scenario, options)?;
    let d = res.distance.distance;
    let chi = res.plan.factor_chi();
    let eta = scenario.link().eta();
    let sat = *scenario.satellite();
    let label = scenario.label();
    Ok(powers
        .par_iter()
        .map(|&p| SweepPoint {
            scenario: label.to_string(),
            power: p,
            rate: power::power_to_logical_rate(p, d, chi, eta, &sat),
            marker: p == sat.power(),
        })
        .collect())
}

/// Where a rate sits on the gate-rate ladder of common architectures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateComparison {
    pub rate: f64,
    /// Architectures whose native gate rate is at or below `rate`.
    pub at_least: Vec<&'static str>,
    /// Architectures whose native gate rate exceeds `rate`.
    pub below: Vec<&'static str>,
    /// Closest architecture in log-rate, if `rate > 0`.
    pub nearest: Option<&'static str>,
}

pub fn compare_rate(rate: f64) -> GateComparison {
    let table = reference_tables().gate_times;
    let at_least = table
        .iter()
        .filter(|g| g.rate_hz <= rate)
        .map(|g| g.architecture)
        .collect();
    let below = table
        .iter()
        .filter(|g| g.rate_hz > rate)
        .map(|g| g.architecture)
        .collect();
    let nearest = (rate > 0.0)
        .then(|| {
            table
                .iter()
                .min_by(|a, b| {
                    let da = (a.rate_hz / rate).log10().abs();
                    let db = (b.rate_hz / rate).log10().abs();
                    da.total_cmp(&db)
                })
                .map(|g| g.architecture)
        })
        .flatten();
    GateComparison {
        rate,
        at_least,
        below,
        nearest,
    }
}

/// Compares a report's satellite-limited clock speed with native gate rates.
pub fn compare_gate_times(report: &RateReport) -> GateComparison {
    compare_rate(report.clock_speed)
}
