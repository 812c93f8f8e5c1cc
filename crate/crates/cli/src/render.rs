//! Plain-text reports.

use std::fmt::Write;

use satclock_core::estimator::compare_gate_times;
use satclock_core::mc::ValidationReport;
use satclock_core::{Binding, DistanceSolution, PurificationPlan, RateReport, SolverMode};

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

fn probability(x: f64) -> String {
    if x >= 1e-3 {
        format!("{x:.12}")
    } else {
        format!("{x:.9e}")
    }
}

fn mode_name(mode: SolverMode) -> &'static str {
    match mode {
        SolverMode::Strict => "strict",
        SolverMode::PaperRounding => "paper_rounding",
    }
}

pub fn distance(sol: &DistanceSolution, odd_only: bool) -> String {
    let step = if odd_only { 2 } else { 1 };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mode             {}{}",
        mode_name(sol.mode),
        if odd_only { " (odd only)" } else { "" }
    );
    let _ = writeln!(out, "target P_LB      {}", sci(sol.target));
    let _ = writeln!(out, "distance D       {}", sol.distance);
    let _ = writeln!(out, "P_LB(D={})       {}", sol.distance, sci(sol.failure_at_distance));
    if let Some(prev) = sol.failure_at_previous {
        let _ = writeln!(out, "P_LB(D={})       {}", sol.distance - step, sci(prev));
    }
    if let Some(root) = sol.real_root {
        let _ = writeln!(out, "real root        {root:.6}");
    }
    if sol.failure_at_distance > sol.target {
        let _ = writeln!(
            out,
            "note             P_LB at D exceeds the target; strict mode gives the conservative D"
        );
    }
    out
}

pub fn plan(plan: &PurificationPlan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "rounds N         {}", plan.rounds());
    for (k, f) in plan.fidelity_ladder().iter().enumerate() {
        let _ = writeln!(out, "{:<16} {f:.12}", format!("F{k}"));
    }
    for (k, p) in plan.block_success().iter().enumerate() {
        let _ = writeln!(out, "{:<16} {p:.12}", format!("p(F{k})"));
    }
    let _ = writeln!(out, "ladder success P {}", probability(plan.ladder_success()));
    let _ = writeln!(out, "multiplex K      {}", plan.multiplex_k());
    let _ = writeln!(out, "1-(1-P)^K        {:.12}", plan.at_least_one_success());
    let _ = writeln!(out, "factor chi       {}", plan.factor_chi());
    out
}

pub fn estimate(r: &RateReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario                    {}", r.label);
    let _ = writeln!(
        out,
        "clock speed                 {} logical pairs/s (satellite-limited)",
        sci(r.clock_speed)
    );
    let _ = writeln!(
        out,
        "code distance D             {} (P_LB = {})",
        r.distance,
        sci(r.failure_at_distance)
    );
    let _ = writeln!(out, "purification factor chi     {}", r.factor_chi);
    let _ = writeln!(out, "transmittance eta           {}", sci(r.eta));
    let _ = writeln!(out, "available power P_s         {} W", sci(r.available_power));
    let _ = writeln!(out, "gate time T                 {} s", sci(r.gate_time));
    let _ = writeln!(out, "hardware rate R_LP          {} /s", sci(r.rate_logical));
    let _ = writeln!(out, "  R_IP = D^2 R_LP           {} /s", sci(r.rate_ideal));
    let _ = writeln!(out, "  R_IP+P = chi R_IP         {} /s", sci(r.rate_with_purification));
    let _ = writeln!(out, "  R_PG                      {} /s", sci(r.rate_generation));
    let _ = writeln!(out, "  power for R_PG            {} W", sci(r.required_power));
    let _ = writeln!(out, "effective rate              {} /s", sci(r.effective_rate));
    if r.binding == Binding::Hardware {
        let _ = writeln!(
            out,
            "warning: gate time binds; 1/(6TD) = {} /s is below the satellite-limited rate",
            sci(r.rate_logical)
        );
    }
    let cmp = compare_gate_times(r);
    let list = |v: &[&str]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    let _ = writeln!(out, "at or above gate rate of    {}", list(&cmp.at_least));
    let _ = writeln!(out, "below gate rate of          {}", list(&cmp.below));
    let _ = writeln!(out, "nearest architecture        {}", cmp.nearest.unwrap_or("none"));
    out
}

pub fn validation(v: &ValidationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "scenario {}  trials {}  seed {}  D {}  chi {}",
        v.scenario, v.trials, v.seed, v.distance, v.factor_chi
    );
    for c in &v.checks {
        let _ = writeln!(
            out,
            "{}  {:<62} analytic {}  empirical {}  delta {:+.3e}  tol {:.3e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            sci(c.analytic),
            sci(c.empirical),
            c.delta,
            c.tolerance
        );
    }
    let _ = writeln!(
        out,
        "{}",
        if v.all_passed {
            "all checks passed"
        } else {
            "some checks FAILED"
        }
    );
    out
}
