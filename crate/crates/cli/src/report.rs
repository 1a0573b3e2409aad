//! Deterministic text reports: the command echo, a digest of every input,
//! then the results.

use std::fmt::Write;
use std::time::Duration;

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Default)]
pub struct RunReport {
    command: String,
    inputs: Vec<(String, String)>,
    lines: Vec<String>,
    timing: Option<Duration>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    pub fn input(&mut self, name: &str, contents: &str) {
        self.inputs.push((name.to_string(), contents.to_string()));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    /// Only set on request, since it breaks byte-for-byte reproducibility.
    pub fn set_timing(&mut self, d: Duration) {
        self.timing = Some(d);
    }

    /// SHA-256 over each input's role and contents, in the order given.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (name, contents) in &self.inputs {
            h.update(name.as_bytes());
            h.update([0]);
            h.update(contents.as_bytes());
            h.update([0]);
        }
        hex::encode(h.finalize())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs: sha256:{}", self.digest());
        let _ = writeln!(out, "results:");
        for l in &self.lines {
            let _ = writeln!(out, "  {l}");
        }
        if let Some(t) = self.timing {
            let _ = writeln!(out, "timing: {:.3} s", t.as_secs_f64());
        }
        out
    }
}

/// Twelve significant digits, plain notation for moderate magnitudes.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
