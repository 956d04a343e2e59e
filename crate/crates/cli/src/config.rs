//! Run configuration: defaults, flat key=value config files, flag overrides,
//! and validation. Config parsing is dependency-free by design; the schema is
//! documented in the README.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use fraclap_core::harness::{ExperimentParams, EXPERIMENTS};

#[derive(Clone, Debug, PartialEq, Eq, Copy)]
pub enum OutputFormat {
    Json,
    Csv,
    Both,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "both" => Ok(OutputFormat::Both),
            other => Err(ConfigError(format!("format must be json|csv|both, got '{other}'"))),
        }
    }

    pub fn wants_json(&self) -> bool {
        matches!(self, OutputFormat::Json | OutputFormat::Both)
    }

    pub fn wants_csv(&self) -> bool {
        matches!(self, OutputFormat::Csv | OutputFormat::Both)
    }
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub experiment: String,
    pub s: f64,
    pub dim: usize,
    pub n_cells: usize,
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = ExperimentParams::default();
        RunConfig {
            experiment: String::new(),
            s: p.s,
            dim: p.dim,
            n_cells: p.n_cells,
            tolerance_overrides: BTreeMap::new(),
            output_dir: PathBuf::from("fraclap_out"),
            format: OutputFormat::Both,
            timestamp: true,
        }
    }
}

impl RunConfig {
    /// Parse a flat key=value file ('#' comments, blank lines allowed).
    /// Recognized keys: experiment, s, n, N, output_dir, format, and
    /// tolerance.<metric> entries.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                ConfigError(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                ConfigError(format!("{}:{}: invalid {what} '{value}'", path.display(), lineno + 1))
            };
            match key {
                "experiment" => self.experiment = value.to_string(),
                "s" => self.s = value.parse().map_err(|_| bad("s"))?,
                "n" => self.dim = value.parse().map_err(|_| bad("n"))?,
                "N" => self.n_cells = value.parse().map_err(|_| bad("N"))?,
                "output_dir" => self.output_dir = PathBuf::from(value),
                "format" => self.format = OutputFormat::parse(value)?,
                k if k.starts_with("tolerance.") => {
                    let metric = k.trim_start_matches("tolerance.").to_string();
                    let v: f64 = value.parse().map_err(|_| bad("tolerance"))?;
                    self.tolerance_overrides.insert(metric, v);
                }
                other => {
                    return Err(ConfigError(format!(
                        "{}:{}: unknown key '{other}'",
                        path.display(),
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !EXPERIMENTS.iter().any(|(n, _)| *n == self.experiment) {
            let names: Vec<&str> = EXPERIMENTS.iter().map(|(n, _)| *n).collect();
            return Err(ConfigError(format!(
                "unknown experiment '{}'; registered: {}",
                self.experiment,
                names.join(", ")
            )));
        }
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(ConfigError("s must be in (0,1)".into()));
        }
        if self.dim != 1 && self.dim != 2 {
            return Err(ConfigError(format!("n must be 1 or 2, got {}", self.dim)));
        }
        let n = self.n_cells;
        if !(32..=4096).contains(&n) || !n.is_power_of_two() {
            return Err(ConfigError(format!(
                "N must be a power of two in [32, 4096], got {n}"
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> ExperimentParams {
        ExperimentParams {
            s: self.s,
            dim: self.dim,
            n_cells: self.n_cells,
            overrides: self.tolerance_overrides.clone(),
        }
    }
}
