//! Seeded Monte Carlo checks of the multiplexing and delivery arithmetic.
//!
//! Trials are split into fixed-size batches. Batch `i` draws from a ChaCha8
//! generator seeded with the master seed and switched to stream `i`, so the
//! result depends only on (inputs, seed) and never on how rayon schedules
//! batches. Aggregates are integer sums.

use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Binomial;
use rayon::prelude::*;
use serde::Serialize;

use crate::bellsim;
use crate::error::{Error, Result};
use crate::estimator;
use crate::link::{self, TailMethod};
use crate::model::{PurificationPlan, Scenario};
use crate::purify;

const BATCH_SIZE: u64 = 4096;

/// Default cap on per-attempt coin flips (`k * trials`).
pub const DEFAULT_DRAW_BUDGET: u128 = 10_000_000_000;

/// Seed offsets separating the simulations inside [`validate`].
const TAG_MULTIPLEXED: u64 = 0x6d75_6c74_6970_6c78;
const TAG_LADDER: u64 = 0x6c61_6464_6572_0001;
const TAG_TRANSMISSION: u64 = 0x7472_616e_736d_6974;

fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

fn batches(trials: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let n = trials.div_ceil(BATCH_SIZE) as usize;
    (0..n).into_par_iter().map(move |b| {
        let b = b as u64;
        let start = b * BATCH_SIZE;
        (b, (trials - start).min(BATCH_SIZE))
    })
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::invalid("trials", "must be >= 1"))
    } else {
        Ok(())
    }
}

/// An empirical success frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frequency {
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    /// `sqrt(rate (1 - rate) / trials)`.
    pub std_error: f64,
}

impl Frequency {
    fn new(trials: u64, successes: u64) -> Self {
        let rate = successes as f64 / trials as f64;
        Self {
            trials,
            successes,
            rate,
            std_error: (rate * (1.0 - rate) / trials as f64).sqrt(),
        }
    }
}

/// Simulates one ladder; true if every block in every round succeeds.
fn run_ladder(blocks: &[Bernoulli], rng: &mut ChaCha8Rng) -> bool {
    let rounds = blocks.len();
    blocks
        .iter()
        .enumerate()
        .all(|(k, block)| (0..1u64 << (rounds - 1 - k)).all(|_| block.sample(rng)))
}

/// Runs `trials` multiplexed purifications: each trial runs the plan's `K`
/// ladders and succeeds if at least one ladder survives its whole block
/// tree.
pub fn simulate_purification(plan: &PurificationPlan, trials: u64, seed: u64) -> Result<Frequency> {
    check_trials(trials)?;
    let blocks: Vec<Bernoulli> = plan
        .block_success()
        .iter()
        .map(|&p| Bernoulli::new(p).map_err(|e| Error::invalid("block_success", e.to_string())))
        .collect::<Result<_>>()?;
    let k = plan.multiplex_k();
    let successes: u64 = batches(trials)
        .map(|(batch, n)| {
            let mut rng = batch_rng(seed, batch);
            (0..n).filter(|_| (0..k).any(|_| run_ladder(&blocks, &mut rng))).count() as u64
        })
        .sum();
    Ok(Frequency::new(trials, successes))
}

/// How delivered-pair counts are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransmissionConfig {
    /// Maximum `k * trials` simulated as individual photon-pair coin flips.
    pub draw_budget: u128,
    /// Past the budget, draw each trial's count from an exact binomial
    /// sampler instead of failing.
    pub binomial_fallback: bool,
    /// Always use the binomial sampler.
    pub force_sampler: bool,
}

impl Default for TransmissionConfig {
    fn default() -> Self {
        Self {
            draw_budget: DEFAULT_DRAW_BUDGET,
            binomial_fallback: true,
            force_sampler: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransmissionStats {
    /// Frequency of trials delivering at least `r_needed` pairs.
    pub delivered: Frequency,
    pub mean_delivered: f64,
    /// Unbiased sample variance of the delivered count.
    pub variance_delivered: f64,
    pub used_sampler: bool,
}

pub fn simulate_transmission(k: u64, eta: f64, r_needed: u64, trials: u64, seed: u64) -> Result<TransmissionStats> {
    simulate_transmission_with(k, eta, r_needed, trials, seed, &TransmissionConfig::default())
}

/// Simulates `trials` windows of `k` attempts at transmittance `eta`.
pub fn simulate_transmission_with(
    k: u64,
    eta: f64,
    r_needed: u64,
    trials: u64,
    seed: u64,
    config: &TransmissionConfig,
) -> Result<TransmissionStats> {
    check_trials(trials)?;
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::invalid("eta", format!("must lie in [0, 1], got {eta}")));
    }
    let draws = u128::from(k) * u128::from(trials);
    let use_sampler = config.force_sampler || draws > config.draw_budget;
    if use_sampler && !config.force_sampler && !config.binomial_fallback {
        return Err(Error::BudgetExceeded {
            draws,
            budget: config.draw_budget,
        });
    }

    let flip = Bernoulli::new(eta).map_err(|e| Error::invalid("eta", e.to_string()))?;
    let binomial = Binomial::new(k, eta).map_err(|e| Error::invalid("eta", e.to_string()))?;

    let (successes, sum, sum_sq) = batches(trials)
        .map(|(batch, n)| {
            let mut rng = batch_rng(seed, batch);
            let mut acc = (0u64, 0u128, 0u128);
            for _ in 0..n {
                let count = if use_sampler {
                    binomial.sample(&mut rng)
                } else {
                    (0..k).filter(|_| flip.sample(&mut rng)).count() as u64
                };
                acc.0 += u64::from(count >= r_needed);
                acc.1 += u128::from(count);
                acc.2 += u128::from(count) * u128::from(count);
            }
            acc
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    let n = trials as f64;
    let mean = sum as f64 / n;
    let variance = if trials > 1 {
        // centred form, exact integer numerator: (n sum_sq - sum^2) / (n (n - 1))
        let t = u128::from(trials);
        let numerator = t * sum_sq - sum * sum;
        numerator as f64 / (n * (n - 1.0))
    } else {
        0.0
    };
    Ok(TransmissionStats {
        delivered: Frequency::new(trials, successes),
        mean_delivered: mean,
        variance_delivered: variance,
        used_sampler: use_sampler,
    })
}

/// One analytic-vs-empirical comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub analytic: f64,
    pub empirical: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, analytic: f64, empirical: f64, tolerance: f64) -> Self {
        let delta = empirical - analytic;
        Self {
            name: name.into(),
            analytic,
            empirical,
            delta,
            tolerance,
            passed: delta.abs() <= tolerance,
        }
    }

    /// Passes when `empirical >= floor - tolerance`.
    fn at_least(name: impl Into<String>, floor: f64, empirical: f64, tolerance: f64) -> Self {
        let delta = empirical - floor;
        Self {
            name: name.into(),
            analytic: floor,
            empirical,
            delta,
            tolerance,
            passed: delta >= -tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub scenario: String,
    pub trials: u64,
    pub seed: u64,
    #[serde(rename = "distance_D")]
    pub distance: u32,
    pub factor_chi: u64,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

/// Binomial standard error at probability `p`.
fn sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Checks the scenario's analytic confidence arithmetic against simulation
/// (3-sigma tolerance) and the recurrence formulas against the density
/// matrix oracle (1e-12).
///
/// Transmission is simulated for one logical pair's raw requirement,
/// `r = D^2 chi` pairs, at the normal-approximation minimum attempt count,
/// using the binomial sampler.
pub fn validate(scenario: &Scenario, trials: u64, seed: u64) -> Result<ValidationReport> {
    check_trials(trials)?;
    let res = estimator::resources(scenario, &estimator::EstimateOptions::default())?;
    let plan = &res.plan;
    let confidence = scenario.purification().confidence();
    let mut checks = Vec::new();

    let analytic = plan.at_least_one_success();
    let sim = simulate_purification(plan, trials, seed ^ TAG_MULTIPLEXED)?;
    let tol = 3.0 * sigma(analytic, trials);
    checks.push(Check::new(
        "purification: at-least-one-of-K success",
        analytic,
        sim.rate,
        tol,
    ));
    checks.push(Check::at_least("purification: success >= S", confidence, sim.rate, tol));

    let single = PurificationPlan::from_ladder(plan.fidelity_ladder().to_vec(), 1)?;
    let sim = simulate_purification(&single, trials, seed ^ TAG_LADDER)?;
    let p = plan.ladder_success();
    checks.push(Check::new(
        "purification: single-ladder success P",
        p,
        sim.rate,
        3.0 * sigma(p, trials),
    ));

    let d = u64::from(res.distance.distance);
    let r = d * d * plan.factor_chi();
    let eta = scenario.link().eta();
    let link_conf = scenario.link().confidence();
    let k = link::min_attempts(r, eta, link_conf, TailMethod::NORMAL)?;
    let config = TransmissionConfig {
        force_sampler: true,
        ..TransmissionConfig::default()
    };
    let sim = simulate_transmission_with(k, eta, r, trials, seed ^ TAG_TRANSMISSION, &config)?;
    let analytic = link::delivery_confidence(k, eta, r, TailMethod::NORMAL)?;
    checks.push(Check::new(
        "transmission: P(delivered >= D^2 chi) vs normal approximation",
        analytic,
        sim.delivered.rate,
        3.0 * sigma(analytic, trials),
    ));
    checks.push(Check::at_least(
        "transmission: delivery >= S",
        link_conf,
        sim.delivered.rate,
        3.0 * sigma(link_conf, trials),
    ));
    let mean = k as f64 * eta;
    let variance = mean * (1.0 - eta);
    checks.push(Check::new(
        "transmission: mean delivered = k eta",
        mean,
        sim.mean_delivered,
        3.0 * (variance / trials as f64).sqrt(),
    ));
    checks.push(Check::new(
        "transmission: variance delivered = k eta (1 - eta)",
        variance,
        sim.variance_delivered,
        0.05 * variance,
    ));

    let mut fidelities: Vec<f64> = (0..=44).map(|i| 0.55 + 0.01 * f64::from(i)).collect();
    fidelities.extend_from_slice(plan.fidelity_ladder());
    let (mut worst_p, mut worst_f) = (0.0f64, 0.0f64);
    for &f in &fidelities {
        let input = bellsim::make_input_state(f)?;
        let out = bellsim::parity_check_block(&input, &input)?;
        worst_p = worst_p.max((out.success_probability - purify::block_success(f)).abs());
        worst_f = worst_f.max((out.output.fidelity() - purify::purified_fidelity(f)).abs());
    }
    checks.push(Check::new("bellsim: max |block success - p(F)|", 0.0, worst_p, 1e-12));
    checks.push(Check::new("bellsim: max |output fidelity - f(F)|", 0.0, worst_f, 1e-12));

    let all_passed = checks.iter().all(|c| c.passed);
    Ok(ValidationReport {
        scenario: scenario.label().to_string(),
        trials,
        seed,
        distance: res.distance.distance,
        factor_chi: plan.factor_chi(),
        checks,
        all_passed,
    })
}
