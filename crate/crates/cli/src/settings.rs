//! One layer for every tunable default. Values start at the library
//! defaults, then a key=value file, then `--tol` overrides, then explicit
//! subcommand flags, each layer replacing the one before.

use std::path::Path;

use boundarylab::arakeljan::DEFAULT_BOUNDARY_MARGIN;
use boundarylab::blaschke::DEFAULT_TRUNCATION_TOLERANCE;
use boundarylab::probe::{DEFAULT_MAX_EXPONENT, DEFAULT_VERDICT_TOLERANCE};
use boundarylab::{FrostmanPolicy, Quadrature};
use serde::Serialize;

use crate::CliError;

/// Names accepted by `--tol name=value`.
pub const TOLERANCE_KEYS: [&str; 7] = [
    "verdict",
    "truncation",
    "quadrature",
    "series",
    "divergence",
    "cauchy",
    "delta",
];

/// Depth exponent for limit-probe schedules: depths `2^{-n}`, `n ≤ 96`.
pub const DEFAULT_PROBE_EXPONENT: u32 = 96;

/// Radial traces sample four depths per octave so the 32-sample late window
/// starts at `1 - 2^{-32}`.
pub const DEFAULT_PER_OCTAVE: u32 = 4;

pub const DEFAULT_SCAN_DELTA: f64 = 0.05;
pub const DEFAULT_SERIES_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Settings {
    pub verdict: f64,
    pub truncation: f64,
    pub quadrature: f64,
    pub series: f64,
    pub divergence: f64,
    pub cauchy: f64,
    pub delta: f64,
    pub growth_window: usize,
    pub max_exponent: u32,
    pub per_octave: u32,
    pub probe_exponent: u32,
    pub margin: usize,
}

impl Default for Settings {
    fn default() -> Self {
        let policy = FrostmanPolicy::<f64>::default();
        Self {
            verdict: DEFAULT_VERDICT_TOLERANCE,
            truncation: DEFAULT_TRUNCATION_TOLERANCE,
            quadrature: Quadrature::<f64>::default().tolerance,
            series: DEFAULT_SERIES_TOLERANCE,
            divergence: policy.divergence_threshold,
            cauchy: policy.cauchy_tolerance,
            delta: DEFAULT_SCAN_DELTA,
            growth_window: policy.growth_window,
            max_exponent: DEFAULT_MAX_EXPONENT,
            per_octave: DEFAULT_PER_OCTAVE,
            probe_exponent: DEFAULT_PROBE_EXPONENT,
            margin: DEFAULT_BOUNDARY_MARGIN,
        }
    }
}

fn positive_real(key: &str, value: &str) -> Result<f64, CliError> {
    match value.trim().parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(CliError::input(format!(
            "{key}: expected a positive number, got '{value}'"
        ))),
    }
}

fn positive_int<I: std::str::FromStr + PartialOrd + Default>(
    key: &str,
    value: &str,
) -> Result<I, CliError> {
    match value.trim().parse::<I>() {
        Ok(v) if v > I::default() => Ok(v),
        _ => Err(CliError::input(format!(
            "{key}: expected a positive integer, got '{value}'"
        ))),
    }
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "verdict" => self.verdict = positive_real(key, value)?,
            "truncation" => self.truncation = positive_real(key, value)?,
            "quadrature" => self.quadrature = positive_real(key, value)?,
            "series" => self.series = positive_real(key, value)?,
            "divergence" => self.divergence = positive_real(key, value)?,
            "cauchy" => self.cauchy = positive_real(key, value)?,
            "delta" => self.delta = positive_real(key, value)?,
            "growth_window" => self.growth_window = positive_int(key, value)?,
            "max_exponent" => self.max_exponent = positive_int(key, value)?,
            "per_octave" => self.per_octave = positive_int(key, value)?,
            "probe_exponent" => self.probe_exponent = positive_int(key, value)?,
            "margin" => self.margin = positive_int(key, value)?,
            other => return Err(CliError::input(format!("unknown setting '{other}'"))),
        }
        Ok(())
    }

    /// Lines of `key = value`; blank lines and `#` comments are ignored.
    pub fn apply_file_text(&mut self, text: &str) -> Result<(), CliError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::input(format!("config line {}: expected key = value", n + 1))
            })?;
            let value = value.trim().trim_matches('"');
            self.set(key.trim(), value)
                .map_err(|e| CliError::input(format!("config line {}: {}", n + 1, e.message)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("config: cannot read {}: {e}", path.display())))?;
        self.apply_file_text(&text)
    }

    /// `name=value` with `name` one of [`TOLERANCE_KEYS`].
    pub fn apply_tolerance(&mut self, spec: &str) -> Result<(), CliError> {
        let (key, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("tol: expected name=value, got '{spec}'")))?;
        let key = key.trim();
        if !TOLERANCE_KEYS.contains(&key) {
            return Err(CliError::input(format!(
                "tol: unknown tolerance '{key}' (known: {})",
                TOLERANCE_KEYS.join(", ")
            )));
        }
        self.set(key, value)
    }

    pub fn frostman_policy(&self) -> FrostmanPolicy<f64> {
        FrostmanPolicy {
            divergence_threshold: self.divergence,
            growth_window: self.growth_window,
            cauchy_tolerance: self.cauchy,
        }
    }

    pub fn quadrature(&self) -> Quadrature<f64> {
        Quadrature::with_tolerance(self.quadrature)
    }
}
