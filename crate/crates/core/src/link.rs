//! Down-link delivery statistics.
//!
//! With `k` transmission attempts at pair transmittance `eta`, the number of
//! delivered pairs is Binomial(k, eta). Rates are per-second counts over a
//! one-second accounting window, so an attempt count and an attempt rate are
//! the same number.

use serde::{Deserialize, Serialize};

use crate::error::{open_unit, Error, Result};
use crate::special::{normal_upper_tail, regularized_incomplete_beta};

/// Largest `k` the exact binomial tail accepts.
pub const MAX_EXACT_ATTEMPTS: u64 = 100_000_000;

pub fn db_to_eta(loss_db: f64) -> f64 {
    10f64.powf(-loss_db / 10.0)
}

pub fn eta_to_db(eta: f64) -> f64 {
    -10.0 * eta.log10()
}

/// How `P(X >= r)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    /// Exact binomial tail via the regularized incomplete beta function.
    ExactBinomial,
    /// Upper tail of N(k eta, k eta (1 - eta)) from `r`, optionally with a
    /// half-count continuity correction.
    Normal { continuity_correction: bool },
}

impl TailMethod {
    pub const NORMAL: TailMethod = TailMethod::Normal {
        continuity_correction: false,
    };
}

fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::invalid("eta", format!("must lie in [0, 1], got {eta}")))
    }
}

/// Tail evaluation without argument checks; `k = 0` is allowed.
fn tail(k: u64, eta: f64, r: u64, method: TailMethod) -> Result<f64> {
    if r == 0 {
        return Ok(1.0);
    }
    if r > k {
        return Ok(0.0);
    }
    // eta at the ends of [0, 1] makes the count deterministic.
    if eta == 0.0 {
        return Ok(0.0);
    }
    if eta == 1.0 {
        return Ok(1.0);
    }
    match method {
        TailMethod::ExactBinomial => {
            if k > MAX_EXACT_ATTEMPTS {
                return Err(Error::TooManyAttempts {
                    k,
                    max: MAX_EXACT_ATTEMPTS,
                });
            }
            // P(X >= r) = I_eta(r, k - r + 1) for 1 <= r <= k.
            regularized_incomplete_beta(r as f64, (k - r + 1) as f64, eta)
        }
        TailMethod::Normal { continuity_correction } => {
            let k = k as f64;
            let mean = k * eta;
            let sd = (k * eta * (1.0 - eta)).sqrt();
            let threshold = if continuity_correction {
                r as f64 - 0.5
            } else {
                r as f64
            };
            Ok(normal_upper_tail((threshold - mean) / sd))
        }
    }
}

/// Probability that `k` attempts deliver at least `r_needed` pairs.
pub fn delivery_confidence(k: u64, eta: f64, r_needed: u64, method: TailMethod) -> Result<f64> {
    if k == 0 {
        return Err(Error::invalid("k", "needs at least one attempt"));
    }
    check_eta(eta)?;
    tail(k, eta, r_needed, method)
}

/// Smallest attempt count whose delivery confidence reaches `confidence`.
///
/// Brackets by doubling from `ceil(r/eta)`, then bisects; the confidence is
/// non-decreasing in `k` for both methods. `r_needed = 0` needs no attempts.
pub fn min_attempts(r_needed: u64, eta: f64, confidence: f64, method: TailMethod) -> Result<u64> {
    check_eta(eta)?;
    open_unit("confidence_S", confidence)?;
    if r_needed == 0 {
        return Ok(0);
    }
    if eta == 0.0 {
        return Err(Error::UnreachableConfidence {
            confidence,
            probability: eta,
        });
    }
    let reaches = |k: u64| -> Result<bool> { Ok(tail(k, eta, r_needed, method)? >= confidence) };

    let start = (r_needed as f64 / eta).ceil();
    if start >= u64::MAX as f64 / 4.0 {
        return Err(Error::UnreachableConfidence {
            confidence,
            probability: eta,
        });
    }
    let mut hi = (start as u64).max(1);
    let mut lo = 0u64;
    while !reaches(hi)? {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .filter(|&h| h < u64::MAX / 4)
            .ok_or(Error::UnreachableConfidence {
                confidence,
                probability: eta,
            })?;
    }
    // invariant: reaches(hi) and (lo == 0 or !reaches(lo))
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Attempt rate from the Markov-inequality shortcut, `r / eta`.
pub fn markov_rate(r_needed: f64, eta: f64) -> f64 {
    r_needed / eta
}
