//! Declarative TOML config. Every key is optional; command-line flags
//! override file values, and built-in defaults fill the rest.

use anyhow::{Context, Result};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Second mode frequency, units of omega1.
    pub omega2: Option<f64>,
    /// Rotation frequency, units of omega1.
    pub omega: Option<f64>,
    pub tmax: Option<f64>,
    pub points: Option<usize>,
    /// "csv" or "json".
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub alpha1_re: Option<f64>,
    pub alpha1_im: Option<f64>,
    pub alpha2_re: Option<f64>,
    pub alpha2_im: Option<f64>,
    /// Integrator step for `validate`.
    pub dt: Option<f64>,
    /// Deviation threshold for `validate`.
    pub threshold: Option<f64>,
    /// Approximation kind for `approx`.
    pub kind: Option<String>,
    /// Evaluation time for `propagator`.
    pub t: Option<f64>,
    pub sweep: Option<SweepFile>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub omega2_min: Option<f64>,
    pub omega2_max: Option<f64>,
    pub omega2_step: Option<f64>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub omega_step: Option<f64>,
    /// "regime", "omega-minus-sq", "max-f", or "max-squeeze".
    pub quantity: Option<String>,
}

pub fn load(path: Option<&Path>) -> Result<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config file {}", path.display()))
}
