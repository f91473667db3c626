#![allow(dead_code)]

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", self.stdout))
    }
}

pub fn degen(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_degen"))
        .args(args)
        .output()
        .expect("spawn degen");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        elapsed: start.elapsed(),
    }
}

/// Coefficient `n` of a series in its JSON form, `"0"` when absent.
pub fn coeff(series: &Value, n: usize) -> String {
    series["coeffs"][n.to_string()].as_str().unwrap_or("0").to_string()
}

/// `σ₁(n)`, by trial division.
pub fn sigma1(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}
