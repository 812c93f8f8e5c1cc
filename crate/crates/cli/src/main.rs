//! `satclock`: logical Bell-pair rate estimates for satellite-fed distributed
//! quantum computing.
//!
//! Exit codes: 0 success, 1 usage or invalid parameter, 2 unsatisfiable or
//! unreachable target (and failed validation checks), 3 I/O or parse error.

mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use satclock_core::estimator::{self, EstimateOptions};
use satclock_core::model::{CodeParams, PurificationSpec, Scenario};
use satclock_core::{mc, purify, DistanceSolver, Error, SolverMode};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "satclock",
    version,
    about = "Logical Bell-pair rate (global clock speed) estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Smallest D meeting the target.
    Strict,
    /// Real root of P_LB(D) = target, rounded.
    Paper,
}

impl From<Mode> for SolverMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => SolverMode::Strict,
            Mode::Paper => SolverMode::PaperRounding,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum code distance for a target logical-pair failure rate.
    Distance {
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = CodeParams::DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = CodeParams::DEFAULT_BETA)]
        beta: f64,
        /// Physical error rate per gate.
        #[arg(long = "p", default_value_t = CodeParams::DEFAULT_P_PHYS)]
        p_phys: f64,
        #[arg(long, value_enum, default_value_t = Mode::Paper)]
        mode: Mode,
        /// Restrict to odd distances.
        #[arg(long)]
        odd_only: bool,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        format: Report,
    },
    /// Purification plan: rounds, ladder success, multiplexing and chi.
    Purify {
        #[arg(long)]
        f0: f64,
        #[arg(long)]
        ftarget: f64,
        #[arg(long)]
        confidence: f64,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        format: Report,
    },
    /// End-to-end rate report.
    Estimate {
        #[command(flatten)]
        common: ScenarioArgs,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        format: Report,
    },
    /// Satellite-limited logical rate versus satellite power.
    Sweep {
        #[command(flatten)]
        common: ScenarioArgs,
        /// Comma list of watts, or min:max:per_decade.
        #[arg(long)]
        powers: Option<String>,
        #[arg(long, value_enum, default_value_t = Table::Csv)]
        format: Table,
    },
    /// Monte Carlo and density-matrix checks of the analytic model.
    Validate {
        #[command(flatten)]
        common: ScenarioArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Report::Text)]
        format: Report,
    },
}

#[derive(clap::Args, Debug)]
struct ScenarioArgs {
    /// Builtin name (state, continental, transcontinental, all) or JSON file.
    #[arg(long, default_value = "state")]
    scenario: String,
    /// Distance solver mode.
    #[arg(long, value_enum, default_value_t = Mode::Paper)]
    mode: Mode,
    /// Gate time override: seconds or an architecture name.
    #[arg(long)]
    gate_time: Option<String>,
    /// Output file (relative paths resolve against $SATCLOCK_OUT_DIR).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<Vec<Scenario>, Failure> {
        input::scenarios(&self.scenario)?
            .into_iter()
            .map(|s| input::gate_time_override(s, self.gate_time.as_deref()))
            .collect()
    }

    fn options(&self) -> EstimateOptions {
        EstimateOptions::with_mode(self.mode.into())
    }
}

/// A failed run: exit code plus message.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_unattainable() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

/// Serializes one item, or an array when there are several.
fn json<T: Serialize>(items: &[T]) -> String {
    let text = match items {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    text.expect("reports serialize") + "\n"
}

#[derive(Serialize)]
struct CsvRow<'a> {
    scenario: &'a str,
    #[serde(rename = "P_s_watts")]
    power: f64,
    #[serde(rename = "R_LP_per_s")]
    rate: f64,
    marker: u8,
}

fn csv(points: &[estimator::SweepPoint]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(CsvRow {
            scenario: &p.scenario,
            power: p.power,
            rate: p.rate,
            marker: u8::from(p.marker),
        })
        .map_err(|e| Failure::io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Distance {
            target,
            alpha,
            beta,
            p_phys,
            mode,
            odd_only,
            format,
        } => {
            let params = CodeParams::new(alpha, beta, p_phys, CodeParams::DEFAULT_GATE_TIME)?;
            let sol = DistanceSolver::new(mode.into())
                .odd_only(odd_only)
                .solve(target, &params)?;
            let text = match format {
                Report::Text => render::distance(&sol, odd_only),
                Report::Json => json(&[sol]),
            };
            input::emit(&text, None)
        }
        Command::Purify {
            f0,
            ftarget,
            confidence,
            format,
        } => {
            let plan = purify::purification_factor(&PurificationSpec::new(f0, ftarget, confidence)?)?;
            let text = match format {
                Report::Text => render::plan(&plan),
                Report::Json => json(&[plan]),
            };
            input::emit(&text, None)
        }
        Command::Estimate { common, format } => {
            let reports = common
                .load()?
                .iter()
                .map(|s| estimator::estimate_with(s, &common.options()))
                .collect::<Result<Vec<_>, _>>()?;
            let text = match format {
                Report::Text => reports.iter().map(render::estimate).collect::<Vec<_>>().join("\n"),
                Report::Json => json(&reports),
            };
            input::emit(&text, common.out.as_deref())
        }
        Command::Sweep { common, powers, format } => {
            let mut points = Vec::new();
            for s in common.load()? {
                let grid = input::powers(powers.as_deref(), s.satellite().power())?;
                points.extend(estimator::sweep_power(&s, &grid, &common.options())?);
            }
            let text = match format {
                Table::Csv => csv(&points)?,
                Table::Json => json(&[&points]),
            };
            input::emit(&text, common.out.as_deref())
        }
        Command::Validate {
            common,
            trials,
            seed,
            format,
        } => {
            let reports = common
                .load()?
                .iter()
                .map(|s| mc::validate(s, trials, seed))
                .collect::<Result<Vec<_>, _>>()?;
            let text = match format {
                Report::Text => reports.iter().map(render::validation).collect::<Vec<_>>().join("\n"),
                Report::Json => json(&reports),
            };
            input::emit(&text, common.out.as_deref())?;
            if reports.iter().all(|r| r.all_passed) {
                Ok(())
            } else {
                Err(Failure {
                    code: 2,
                    message: "validation checks failed".into(),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
