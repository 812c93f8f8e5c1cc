use std::path::Path;
use std::process::{Command, Output};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn finish(out: Output) -> Run {
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn satclock(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_satclock"))
        .args(args)
        .env_remove("SATCLOCK_OUT_DIR")
        .output()
        .expect("binary runs");
    finish(out)
}

#[allow(dead_code)]
pub fn satclock_in(dir: &Path, out_dir: Option<&Path>, args: &[&str]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_satclock"));
    cmd.args(args).current_dir(dir).env_remove("SATCLOCK_OUT_DIR");
    if let Some(d) = out_dir {
        cmd.env("SATCLOCK_OUT_DIR", d);
    }
    finish(cmd.output().expect("binary runs"))
}

/// Runs and requires exit code 0, returning stdout.
pub fn ok(args: &[&str]) -> String {
    let run = satclock(args);
    assert_eq!(run.code, 0, "satclock {args:?} failed: {}", run.stderr);
    run.stdout
}
