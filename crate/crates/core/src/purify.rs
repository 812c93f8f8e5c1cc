//! Planner for the 2->1 parity-check recurrence protocol with circuit
//! multiplexing.
//!
//! Inputs are rank-2 states `F|phi+><phi+| + (1-F)|phi-><phi-|`. One block
//! consumes two pairs of fidelity `F`, succeeds with probability
//! `F^2 + (1-F)^2`, and returns a pair of the same form with fidelity
//! `F^2 / (F^2 + (1-F)^2)`.

use crate::error::{open_unit, Error, Result};
use crate::model::{PurificationPlan, PurificationSpec};

/// Recurrence rounds are capped here; from any `F0 > 0.5` a target below
/// `1 - 1e-15` is reached in far fewer.
const MAX_ROUNDS: usize = 62;

/// Output fidelity of one successful block.
pub fn purified_fidelity(fidelity: f64) -> f64 {
    let good = fidelity * fidelity;
    let bad = (1.0 - fidelity) * (1.0 - fidelity);
    good / (good + bad)
}

/// Success probability of one block on two pairs of fidelity `fidelity`.
pub fn block_success(fidelity: f64) -> f64 {
    fidelity * fidelity + (1.0 - fidelity) * (1.0 - fidelity)
}

/// Iterates the recurrence from `F0` until the fidelity reaches the target.
///
/// Returns the round count `N` and the ladder `[F0, F1, .., FN]`; `N = 0`
/// when `F0` already meets the target.
pub fn fidelity_ladder(spec: &PurificationSpec) -> Result<(u32, Vec<f64>)> {
    let unreachable = || Error::UnreachableFidelity {
        initial: spec.f_initial(),
        target: spec.f_target(),
    };
    let mut ladder = vec![spec.f_initial()];
    let mut current = spec.f_initial();
    while current < spec.f_target() {
        if ladder.len() > MAX_ROUNDS {
            return Err(unreachable());
        }
        let next = purified_fidelity(current);
        if next <= current {
            // stalled in floating point
            return Err(unreachable());
        }
        ladder.push(next);
        current = next;
    }
    Ok(((ladder.len() - 1) as u32, ladder))
}

/// Probability that one full ladder succeeds:
/// `prod_k p(F_k)^(2^(N-1-k))`, since round `k` runs `2^(N-1-k)` blocks.
pub fn ladder_success(ladder: &[f64]) -> f64 {
    let rounds = ladder.len().saturating_sub(1);
    ladder[..rounds]
        .iter()
        .enumerate()
        .map(|(k, &f)| block_success(f).powi(1 << (rounds - 1 - k)))
        .product()
}

/// `1 - (1 - p)^k`: probability that at least one of `k` independent
/// attempts succeeds.
pub fn at_least_one(p: f64, k: u64) -> f64 {
    if p >= 1.0 {
        return if k > 0 { 1.0 } else { 0.0 };
    }
    -((k as f64) * (-p).ln_1p()).exp_m1()
}

/// Smallest `K` with `1 - (1 - P)^K >= S`.
pub fn multiplex_count(ladder_success: f64, confidence: f64) -> Result<u32> {
    open_unit("confidence_S", confidence)?;
    if !(ladder_success > 0.0 && ladder_success <= 1.0) {
        return Err(Error::invalid(
            "ladder_success_P",
            format!("must lie in (0, 1], got {ladder_success}"),
        ));
    }
    if ladder_success == 1.0 {
        return Ok(1);
    }
    let estimate = ((-confidence).ln_1p() / (-ladder_success).ln_1p()).ceil();
    if estimate.is_nan() || estimate > f64::from(u32::MAX - 1) {
        return Err(Error::UnreachableConfidence {
            confidence,
            probability: ladder_success,
        });
    }
    let mut k = (estimate as u32).max(1);
    while at_least_one(ladder_success, u64::from(k)) < confidence {
        k += 1;
    }
    while k > 1 && at_least_one(ladder_success, u64::from(k - 1)) >= confidence {
        k -= 1;
    }
    Ok(k)
}

/// Full plan: rounds, ladder, per-round block success, ladder success `P`,
/// multiplex count `K` and `chi = K 2^N`.
pub fn purification_factor(spec: &PurificationSpec) -> Result<PurificationPlan> {
    let (_, ladder) = fidelity_ladder(spec)?;
    let p = ladder_success(&ladder);
    let k = multiplex_count(p, spec.confidence())?;
    PurificationPlan::from_ladder(ladder, k)
}
