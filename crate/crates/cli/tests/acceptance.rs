//! Acceptance suite. Prints one PASS/FAIL line per criterion; run with
//! `cargo test -p satclock-cli --test acceptance -- --nocapture`.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use common::ok;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satclock_core::bellsim::{make_input_state, parity_check_block};
use satclock_core::link::{delivery_confidence, min_attempts, TailMethod, MAX_EXACT_ATTEMPTS};
use satclock_core::mc::simulate_purification;
use satclock_core::model::{CodeParams, LinkSpec, PurificationSpec, SatelliteSpec, Scenario};
use satclock_core::power::power_to_logical_rate;
use satclock_core::purify::{fidelity_ladder, ladder_success, purification_factor};
use satclock_core::{estimate, RateReport};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn purification_pipeline() -> Outcome {
    let plan: Value = serde_json::from_str(&ok(&[
        "purify",
        "--f0",
        "0.87",
        "--ftarget",
        "0.999",
        "--confidence",
        "0.999",
        "--format",
        "json",
    ]))
    .map_err(|e| e.to_string())?;
    let p = plan["ladder_success_P"].as_f64().ok_or("missing P")?;
    let (n, k, chi) = (&plan["rounds_N"], &plan["multiplex_K"], &plan["factor_chi"]);
    check(*n == 2 && *k == 9 && *chi == 36, || format!("N={n} K={k} chi={chi}"))?;
    check((p - 0.573).abs() <= 5e-4, || format!("P={p}"))?;
    Ok(format!("N=2, P={p:.6}, K=9, chi=36"))
}

fn distance_modes() -> Outcome {
    let get = |mode: &str| -> Result<Value, String> {
        serde_json::from_str(&ok(&[
            "distance", "--target", "4.28e-21", "--alpha", "0.3", "--beta", "70", "--p", "0.001", "--mode", mode,
            "--format", "json",
        ]))
        .map_err(|e| e.to_string())
    };
    let paper = get("paper")?;
    let strict = get("strict")?;
    check(paper["distance_D"] == 37, || format!("paper D={}", paper["distance_D"]))?;
    check(strict["distance_D"] == 38, || {
        format!("strict D={}", strict["distance_D"])
    })?;
    let at_37 = strict["failure_at_previous_D"].as_f64().ok_or("missing P_LB(37)")?;
    let at_38 = strict["failure_at_D"].as_f64().ok_or("missing P_LB(38)")?;
    // direct evaluation of 4 D alpha (beta p)^((D+1)/2)
    let direct = |d: f64| 4.0 * d * 0.3 * (70.0f64 * 0.001).powf((d + 1.0) / 2.0);
    check(
        rel(at_37, direct(37.0)) < 1e-12 && rel(at_38, direct(38.0)) < 1e-12,
        || format!("P_LB(37)={at_37:e} P_LB(38)={at_38:e}"),
    )?;
    check(
        (at_37 / 1e-21 * 10.0).round() == 51.0 && (at_38 / 1e-21 * 10.0).round() == 14.0,
        || format!("P_LB(37)={at_37:e} P_LB(38)={at_38:e}"),
    )?;
    let text = ok(&["distance", "--target", "4.28e-21", "--mode", "strict"]);
    check(text.contains("P_LB(D=37)") && text.contains("P_LB(D=38)"), || {
        "text output lacks P_LB values".into()
    })?;
    Ok(format!(
        "paper_rounding D=37, strict D=38, P_LB(37)={at_37:.3e}, P_LB(38)={at_38:.3e}"
    ))
}

fn headline_rates() -> Outcome {
    let reports: Vec<RateReport> =
        serde_json::from_str(&ok(&["estimate", "--scenario", "all", "--format", "json"])).map_err(|e| e.to_string())?;
    let expected = [("state", 2e6), ("continental", 1e4), ("transcontinental", 6e2)];
    let mut parts = Vec::new();
    for (r, (name, want)) in reports.iter().zip(expected) {
        check(r.label == name, || format!("order: {}", r.label))?;
        check(
            r.distance == 37 && r.factor_chi == 36 && r.available_power == 1e4,
            || {
                format!(
                    "{name}: D={} chi={} P_s={}",
                    r.distance, r.factor_chi, r.available_power
                )
            },
        )?;
        let ratio = r.clock_speed / want;
        check((1.0 / 1.5..=1.5).contains(&ratio), || {
            format!("{name}: {} vs {want}", r.clock_speed)
        })?;
        parts.push(format!("{name} {:.4e} (x{ratio:.3})", r.clock_speed));
    }
    check(reports.len() == 3, || format!("{} reports", reports.len()))?;
    Ok(parts.join(", "))
}

fn density_matrix_oracle() -> Outcome {
    let mut fs: Vec<f64> = (0..9).map(|i| 0.55 + 0.05 * f64::from(i)).collect();
    fs.push(0.99);
    let mut worst: f64 = 0.0;
    for &f in &fs {
        let input = make_input_state(f).map_err(|e| e.to_string())?;
        let out = parity_check_block(&input, &input).map_err(|e| e.to_string())?;
        let ok_prob = f * f + (1.0 - f) * (1.0 - f);
        let ds = (out.success_probability - ok_prob).abs();
        let df = (out.output.fidelity() - f * f / ok_prob).abs();
        check(ds <= 1e-12 && df <= 1e-12, || {
            format!("F={f}: success off by {ds:e}, fidelity by {df:e}")
        })?;
        worst = worst.max(ds).max(df);
    }
    Ok(format!("{} fidelities, max deviation {worst:.1e}", fs.len()))
}

/// Walks the full binary tree of blocks for `rounds` rounds. Returns the
/// output fidelity, the probability that every block succeeds, and the
/// block count.
fn tree(rounds: u32, f0: f64) -> (f64, f64, u64) {
    if rounds == 0 {
        return (f0, 1.0, 0);
    }
    let (fa, pa, na) = tree(rounds - 1, f0);
    let (fb, pb, nb) = tree(rounds - 1, f0);
    let ok = fa * fb + (1.0 - fa) * (1.0 - fb);
    (fa * fb / ok, pa * pb * ok, na + nb + 1)
}

fn ladder_brute_force() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 1..=6u32 {
        for i in 0..40 {
            let f0 = 0.52 + 0.0115 * f64::from(i);
            let (top, p_tree, blocks) = tree(n, f0);
            let (prev, _, _) = tree(n - 1, f0);
            check(blocks == (1 << n) - 1, || format!("N={n}: {blocks} blocks"))?;
            let target = 0.5 * (prev + top);
            if !(target > prev && target < top && target < 1.0) {
                continue;
            }
            let spec = PurificationSpec::new(f0, target, 0.999).map_err(|e| e.to_string())?;
            let (rounds, ladder) = fidelity_ladder(&spec).map_err(|e| e.to_string())?;
            check(rounds == n, || {
                format!("F0={f0}: planner ran {rounds} rounds, expected {n}")
            })?;
            let d = (ladder_success(&ladder) - p_tree).abs();
            check(d <= 1e-12, || format!("F0={f0} N={n}: off by {d:e}"))?;
            worst = worst.max(d);
            cases += 1;
        }
    }
    // the N=5 plan from F0=0.6
    let plan = purification_factor(&PurificationSpec::new(0.6, 0.999, 0.999).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let (_, p_tree, _) = tree(plan.rounds(), 0.6);
    let d = (plan.ladder_success() - p_tree).abs();
    check(d <= 1e-12, || format!("F0=0.6 plan off by {d:e}"))?;
    Ok(format!(
        "{cases} ladders with N = 1..6, max deviation {:.1e}",
        worst.max(d)
    ))
}

fn monte_carlo_confidence() -> Outcome {
    let plan = purification_factor(&PurificationSpec::new(0.87, 0.999, 0.999).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let trials = 1_000_000;
    let freq = simulate_purification(&plan, trials, 42).map_err(|e| e.to_string())?;
    let analytic = 1.0 - (1.0 - plan.ladder_success()).powi(9);
    let se = (analytic * (1.0 - analytic) / trials as f64).sqrt();
    let z = (freq.rate - analytic) / se;
    check(z.abs() <= 3.0, || {
        format!("empirical {} vs {analytic}: {z:.2} SE", freq.rate)
    })?;
    check(freq.rate >= 0.999, || format!("empirical {} < 0.999", freq.rate))?;
    let again = simulate_purification(&plan, trials, 42).map_err(|e| e.to_string())?;
    check(again == freq, || "rerun with the same seed differs".into())?;
    Ok(format!(
        "empirical {:.7} ({} of {trials}) vs 1-(1-P)^9 = {analytic:.7} ({z:+.3} SE)",
        freq.rate, freq.successes
    ))
}

/// P(X >= r), X ~ Binomial(k, eta), summed term by term.
fn tail_by_summation(k: u64, eta: f64, r: u64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    if r > k {
        return 0.0;
    }
    let mut ln_choose = 0.0;
    let mut terms = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        if i > 0 {
            ln_choose += ((k - i + 1) as f64).ln() - (i as f64).ln();
        }
        terms.push((ln_choose + i as f64 * eta.ln() + (k - i) as f64 * (-eta).ln_1p()).exp());
    }
    if r as f64 > k as f64 * eta {
        terms[r as usize..].iter().sum()
    } else {
        1.0 - terms[..r as usize].iter().sum::<f64>()
    }
}

fn link_solvers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst_tail: f64 = 0.0;
    for _ in 0..5000 {
        let k = rng.random_range(1..=1000u64);
        let eta = rng.random_range(1e-3..0.999);
        let r = rng.random_range(0..=k);
        let got = delivery_confidence(k, eta, r, TailMethod::ExactBinomial).map_err(|e| e.to_string())?;
        let d = (got - tail_by_summation(k, eta, r)).abs();
        check(d <= 1e-12, || format!("k={k} eta={eta} r={r}: off by {d:e}"))?;
        worst_tail = worst_tail.max(d);
    }

    let mut worst_ratio: f64 = 0.0;
    let mut cases = 0;
    for r in [1u64, 10, 100, 1000, 10_000, 49_284, 100_000] {
        for eta in [0.9, 0.5, 0.1, 1e-2, 1e-3, 1e-4, 3.09e-5] {
            for s in [0.9, 0.99, 0.999] {
                let normal = min_attempts(r, eta, s, TailMethod::NORMAL).map_err(|e| e.to_string())?;
                if normal > MAX_EXACT_ATTEMPTS {
                    continue;
                }
                let exact = min_attempts(r, eta, s, TailMethod::ExactBinomial).map_err(|e| e.to_string())?;
                if (exact as f64) * eta * (1.0 - eta) < 100.0 {
                    continue;
                }
                let ratio = rel(normal as f64, exact as f64);
                check(ratio <= 0.02, || {
                    format!("r={r} eta={eta} S={s}: exact {exact}, normal {normal}")
                })?;
                worst_ratio = worst_ratio.max(ratio);
                cases += 1;
            }
        }
    }
    check(cases > 30, || format!("only {cases} regime cases"))?;
    Ok(format!(
        "tail max deviation {worst_tail:.1e} (5000 cases, k <= 1000); min_attempts max gap {:.3}% over {cases} cases",
        100.0 * worst_ratio
    ))
}

fn random_scenario(rng: &mut ChaCha8Rng, i: usize) -> Result<Scenario, String> {
    let beta = rng.random_range(10.0..100.0);
    let code = CodeParams::new(
        rng.random_range(0.05..1.0),
        beta,
        rng.random_range(0.05..0.7) / beta,
        rng.random_range(1e-9..1e-3),
    )
    .map_err(|e| e.to_string())?;
    let f0 = rng.random_range(0.7..0.98);
    let purification = PurificationSpec::new(
        f0,
        rng.random_range(f0.max(0.99)..0.9999),
        rng.random_range(0.9..0.9999),
    )
    .map_err(|e| e.to_string())?;
    let link = LinkSpec::from_loss_db(rng.random_range(10.0..90.0), 0.999).map_err(|e| e.to_string())?;
    let sat = SatelliteSpec::new(
        rng.random_range(1.0..2e4),
        rng.random_range(1e-6..1e-4),
        rng.random_range(1e5..1e7),
    )
    .map_err(|e| e.to_string())?;
    Scenario::new(
        format!("random-{i}"),
        code,
        10f64.powf(rng.random_range(-24.0..-6.0)),
        purification,
        link,
        sat,
    )
    .map_err(|e| e.to_string())
}

fn chain_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let s = random_scenario(&mut rng, i)?;
        let r = estimate(&s).map_err(|e| format!("scenario {i}: {e}"))?;
        let sat = s.satellite();
        let d2 = f64::from(r.distance).powi(2);
        let errs = [
            rel(r.rate_ideal, d2 * r.rate_logical),
            rel(r.rate_with_purification, r.rate_ideal * r.factor_chi as f64),
            rel(r.rate_generation, r.rate_with_purification / r.eta),
            rel(
                r.required_power,
                r.rate_generation * sat.source_power() / sat.source_brightness(),
            ),
            rel(
                power_to_logical_rate(r.required_power, r.distance, r.factor_chi, r.eta, sat),
                r.rate_logical,
            ),
        ];
        let e = errs.iter().fold(0.0f64, |m, &x| m.max(x));
        check(e <= 1e-10, || format!("scenario {i}: relative error {e:e} in {errs:?}"))?;
        worst = worst.max(e);
    }
    Ok(format!("1000 random scenarios, max relative error {worst:.1e}"))
}

fn parse_sweep(csv_text: &str) -> Result<BTreeMap<String, Vec<(f64, f64)>>, String> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    check(headers == vec!["scenario", "P_s_watts", "R_LP_per_s", "marker"], || {
        format!("headers {headers:?}")
    })?;
    let mut curves: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    for row in reader.records() {
        let row = row.map_err(|e| e.to_string())?;
        let p: f64 = row[1].parse().map_err(|_| format!("bad power {}", &row[1]))?;
        let r: f64 = row[2].parse().map_err(|_| format!("bad rate {}", &row[2]))?;
        curves.entry(row[0].to_string()).or_default().push((p, r));
    }
    Ok(curves)
}

fn sweep_regression() -> Outcome {
    let curves = parse_sweep(&ok(&["sweep", "--scenario", "all"]))?;
    let order = ["state", "continental", "transcontinental"];
    check(curves.len() == 3, || format!("{} curves", curves.len()))?;
    for name in order {
        let c = &curves[name];
        check(c.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1), || {
            format!("{name} is not strictly increasing")
        })?;
    }
    let (a, b, c) = (&curves[order[0]], &curves[order[1]], &curves[order[2]]);
    check(a.len() == b.len() && b.len() == c.len(), || {
        "curves use different grids".into()
    })?;
    for i in 0..a.len() {
        check(a[i].0 == b[i].0 && b[i].0 == c[i].0, || {
            format!("grids differ at row {i}")
        })?;
        check(a[i].1 > b[i].1 && b[i].1 > c[i].1, || {
            format!("curves cross at {} W", a[i].0)
        })?;
    }

    // every grid power below 50 kW together with its double
    let mut powers: Vec<f64> = a.iter().map(|&(p, _)| p).filter(|&p| p <= 5e4).collect();
    let base = powers.clone();
    powers.extend(base.iter().map(|p| 2.0 * p));
    powers.sort_by(f64::total_cmp);
    powers.dedup();
    let list = powers.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(",");
    let doubled = parse_sweep(&ok(&["sweep", "--scenario", "all", "--powers", &list]))?;
    let mut pairs = 0;
    for name in order {
        let rates: BTreeMap<u64, f64> = doubled[name].iter().map(|&(p, r)| (p.to_bits(), r)).collect();
        for &p in &base {
            let (r1, r2) = (rates[&p.to_bits()], rates[&(2.0 * p).to_bits()]);
            check(r2 == 2.0 * r1, || {
                format!("{name} at {p} W: R({})={r2} != 2 x {r1}", 2.0 * p)
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "3 curves x {} points monotone and ordered; {pairs} doublings exact",
        a.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 9] = [
        ("purification pipeline (N, P, K, chi)", purification_pipeline),
        ("code distance: paper_rounding 37, strict 38", distance_modes),
        ("headline rates at 10 kW within x1.5", headline_rates),
        ("density-matrix oracle matches recurrence", density_matrix_oracle),
        ("ladder success vs tree enumeration, N <= 6", ladder_brute_force),
        ("Monte Carlo confidence, 1e6 trials", monte_carlo_confidence),
        ("exact vs normal link solver", link_solvers),
        ("rate chain identities on random scenarios", chain_identities),
        ("sweep: monotone, ordered, linear in power", sweep_regression),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail} [{ms:.0} ms]", i + 1),
            Err(why) => {
                println!("FAIL  {}. {name}: {why} [{ms:.0} ms]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
