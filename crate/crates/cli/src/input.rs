//! Scenario sources, power grids and output destinations.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};

use satclock_core::estimator::{default_grid, log_grid, with_marker};
use satclock_core::model::{builtin, builtin_scenarios, gate_time, Scenario};

use crate::Failure;

/// Relative `--out` paths are resolved against this directory when set.
pub const OUT_DIR_VAR: &str = "SATCLOCK_OUT_DIR";

/// Resolves `--scenario`: a builtin name, `all`, or a JSON file.
pub fn scenarios(source: &str) -> Result<Vec<Scenario>, Failure> {
    if source.eq_ignore_ascii_case("all") {
        return Ok(builtin_scenarios());
    }
    if let Some(s) = builtin(source) {
        return Ok(vec![s]);
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| {
        Failure::io(format!(
            "cannot read scenario `{source}`: {e} (builtin names: state, continental, transcontinental, all)"
        ))
    })?;
    Scenario::from_json(&text)
        .map(|s| vec![s])
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Applies `--gate-time`, given in seconds or as an architecture name.
pub fn gate_time_override(scenario: Scenario, value: Option<&str>) -> Result<Scenario, Failure> {
    let Some(value) = value else {
        return Ok(scenario);
    };
    let seconds = match value.parse::<f64>() {
        Ok(t) => t,
        Err(_) => gate_time(value).ok_or_else(|| {
            Failure::usage(format!(
                "--gate-time `{value}` is neither a number of seconds nor one of: superconducting, nv diamond, ion trap, nmr"
            ))
        })?,
    };
    let code = scenario.code().with_gate_time(seconds)?;
    Ok(scenario.with_code(code))
}

/// Parses `--powers`: a comma list (`100,1e3,1e4`) or a log grid
/// `min:max:per_decade`. Without it, the default grid with the scenario's own
/// power inserted.
pub fn powers(spec: Option<&str>, scenario_power: f64) -> Result<Vec<f64>, Failure> {
    let Some(spec) = spec else {
        return Ok(with_marker(default_grid(), scenario_power));
    };
    let bad = |what: &str| Failure::usage(format!("--powers `{spec}`: {what}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [min, max, per] = parts[..] else {
            return Err(bad("expected min:max:per_decade"));
        };
        let min: f64 = min.trim().parse().map_err(|_| bad("min is not a number"))?;
        let max: f64 = max.trim().parse().map_err(|_| bad("max is not a number"))?;
        let per: u32 = per
            .trim()
            .parse()
            .map_err(|_| bad("per_decade is not a positive integer"))?;
        return Ok(log_grid(min, max, per)?);
    }
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| bad(&format!("`{p}` is not a number")))
        })
        .collect()
}

/// Output path for `--out`, honouring [`OUT_DIR_VAR`] for relative paths.
pub fn out_path(out: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if out.is_relative() && !dir.is_empty() => Path::new(&dir).join(out),
        _ => out.to_path_buf(),
    }
}

/// Writes `text` to `--out` or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Failure::io(format!("cannot write to stdout: {e}"))),
                _ => Ok(()),
            }
        }
        Some(out) => {
            let path = out_path(out);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)
                    .map_err(|e| Failure::io(format!("cannot create {}: {e}", parent.display())))?;
            }
            fs::write(&path, text).map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}
