//! Surface-code error scaling, logical-pair failure rate, minimum code
//! distance, and the hardware-limited rate chain.
//!
//! A logical Bell pair takes four surface-code operations of `D` syndrome
//! rounds each; one round lasts `6T`. Lattice surgery across the seam
//! consumes `D` physical Bell pairs per round, `D^2` in total.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::CodeParams;

/// Upper limit of the distance search.
pub const MAX_DISTANCE: u32 = 10_000;

/// Surface-code operations per logical pair (two preparations, merge, split).
pub const OPERATIONS_PER_PAIR: f64 = 4.0;

/// Circuit depth of one syndrome-extraction cycle, in gate times.
pub const SYNDROME_DEPTH: f64 = 6.0;

fn check_distance(distance: u32) -> Result<()> {
    if distance == 0 {
        Err(Error::invalid("distance_D", "must be >= 1"))
    } else {
        Ok(())
    }
}

/// `ln P_L` at a real-valued distance.
fn ln_logical_error_rate(distance: f64, params: &CodeParams) -> f64 {
    params.alpha().ln() + 0.5 * (distance + 1.0) * (params.beta().ln() + params.p_phys().ln())
}

/// `ln P_LB` at a real-valued distance.
fn ln_pair_failure(distance: f64, params: &CodeParams) -> f64 {
    OPERATIONS_PER_PAIR.ln() + distance.ln() + ln_logical_error_rate(distance, params)
}

/// Logical error rate per syndrome-extraction cycle,
/// `alpha (beta p)^((D+1)/2)`, evaluated in log space so values near 1e-21
/// keep full relative precision. Even distances use the real exponent.
pub fn logical_error_rate(distance: u32, params: &CodeParams) -> Result<f64> {
    check_distance(distance)?;
    Ok(ln_logical_error_rate(f64::from(distance), params).exp())
}

/// How a `D`-round operation's success probability is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuccessModel {
    /// `(1 - P_L)^D`.
    Exact,
    /// `max(0, 1 - D P_L)`.
    FirstOrder,
}

/// Probability that `distance` consecutive syndrome rounds all succeed.
pub fn operation_success(distance: u32, logical_error: f64, model: SuccessModel) -> f64 {
    debug_assert!((0.0..=1.0).contains(&logical_error));
    let d = f64::from(distance);
    match model {
        SuccessModel::Exact => (d * (-logical_error).ln_1p()).exp(),
        SuccessModel::FirstOrder => (1.0 - d * logical_error).max(0.0),
    }
}

/// First-order failure rate of producing one logical pair,
/// `P_LB = 4 D alpha (beta p)^((D+1)/2)`.
pub fn logical_pair_failure(distance: u32, params: &CodeParams) -> Result<f64> {
    check_distance(distance)?;
    Ok(ln_pair_failure(f64::from(distance), params).exp())
}

/// Distance solver mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMode {
    /// Smallest integer `D` with `P_LB(D) <= target`.
    Strict,
    /// Real root of `P_LB(D) = target`, rounded to the nearest integer. This
    /// can land one below the strict answer.
    #[default]
    PaperRounding,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceSolution {
    #[serde(rename = "distance_D")]
    pub distance: u32,
    /// `P_LB` at the returned distance.
    #[serde(rename = "failure_at_D")]
    pub failure_at_distance: f64,
    /// `P_LB` at the next smaller admissible distance, if any.
    #[serde(rename = "failure_at_previous_D")]
    pub failure_at_previous: Option<f64>,
    /// Real-valued root of `P_LB(D) = target` (`paper_rounding` only).
    #[serde(rename = "real_root_D", skip_serializing_if = "Option::is_none")]
    pub real_root: Option<f64>,
    pub mode: SolverMode,
    pub target: f64,
}

/// Minimum code distance for a target logical-pair failure rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DistanceSolver {
    pub mode: SolverMode,
    /// Restrict to odd distances, as for conventional surface-code patches.
    pub odd_only: bool,
}

impl DistanceSolver {
    pub fn new(mode: SolverMode) -> Self {
        Self { mode, odd_only: false }
    }

    pub fn odd_only(mut self, odd_only: bool) -> Self {
        self.odd_only = odd_only;
        self
    }

    fn step(&self) -> u32 {
        if self.odd_only {
            2
        } else {
            1
        }
    }

    pub fn solve(&self, target: f64, params: &CodeParams) -> Result<DistanceSolution> {
        crate::error::open_unit("target_failure_PLB", target)?;
        match self.mode {
            SolverMode::Strict => self.solve_strict(target, params),
            SolverMode::PaperRounding => self.solve_rounded(target, params),
        }
    }

    fn solution(&self, distance: u32, target: f64, params: &CodeParams, root: Option<f64>) -> DistanceSolution {
        let failure = |d: u32| ln_pair_failure(f64::from(d), params).exp();
        let previous = distance.checked_sub(self.step()).filter(|&d| d >= 1);
        DistanceSolution {
            distance,
            failure_at_distance: failure(distance),
            failure_at_previous: previous.map(failure),
            real_root: root,
            mode: self.mode,
            target,
        }
    }

    fn solve_strict(&self, target: f64, params: &CodeParams) -> Result<DistanceSolution> {
        let ln_target = target.ln() + TARGET_SLACK;
        (1..=MAX_DISTANCE)
            .step_by(self.step() as usize)
            .find(|&d| ln_pair_failure(f64::from(d), params) <= ln_target)
            .map(|d| self.solution(d, target, params, None))
            .ok_or(Error::UnsatisfiableDistance {
                target,
                max: MAX_DISTANCE,
            })
    }

    fn solve_rounded(&self, target: f64, params: &CodeParams) -> Result<DistanceSolution> {
        let ln_target = target.ln() + TARGET_SLACK;
        let f = |d: f64| ln_pair_failure(d, params) - ln_target;

        let root = if f(1.0) <= 0.0 {
            1.0
        } else {
            // d/dD ln P_LB = 1/D + ln(beta p)/2 vanishes at D* = -2/ln(beta p);
            // P_LB increases below D* and decreases above it. With f(1) > 0
            // the root is the unique crossing on the decreasing branch.
            let peak = (-2.0 / params.threshold_ratio().ln()).max(1.0);
            let max = f64::from(MAX_DISTANCE);
            if f(max) > 0.0 {
                return Err(Error::UnsatisfiableDistance {
                    target,
                    max: MAX_DISTANCE,
                });
            }
            let (mut lo, mut hi) = (peak, max);
            while hi - lo > 1e-9 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };

        let distance = if self.odd_only {
            // nearest odd integer
            let k = ((root - 1.0) / 2.0).round().max(0.0);
            (2.0 * k + 1.0) as u32
        } else {
            (root.round() as u32).max(1)
        };
        Ok(self.solution(distance, target, params, Some(root)))
    }
}

/// Relative slack (in log space) when comparing failure rates to the target,
/// so a target equal to `P_LB(D)` in exact arithmetic selects `D`.
const TARGET_SLACK: f64 = 1e-12;

/// Minimum code distance meeting `target` under `mode` (any parity).
pub fn min_code_distance(target: f64, params: &CodeParams, mode: SolverMode) -> Result<DistanceSolution> {
    DistanceSolver::new(mode).solve(target, params)
}

/// Hardware-limited logical pair rate `1 / (6 T D)`.
pub fn logical_pair_rate_hw(distance: u32, gate_time: f64) -> f64 {
    1.0 / (SYNDROME_DEPTH * gate_time * f64::from(distance))
}

/// Ideal physical pair rate `D^2 R_LP` needed to sustain `R_LP`.
pub fn ideal_pair_rate(distance: u32, logical_rate: f64) -> f64 {
    let d = f64::from(distance);
    d * d * logical_rate
}
