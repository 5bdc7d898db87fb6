//! Experiment configuration: defaults, `key=value` files, validation.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use lle_core::{StandardEmbedding, WeightMode};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeKind {
    Exact,
    Regularized,
}

impl ModeKind {
    pub fn name(self) -> &'static str {
        match self {
            ModeKind::Exact => "exact",
            ModeKind::Regularized => "reg",
        }
    }
}

impl FromStr for ModeKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "exact" => Ok(ModeKind::Exact),
            "reg" | "regularized" => Ok(ModeKind::Regularized),
            other => Err(CliError::Config(format!("unknown mode '{other}' (expected exact or reg)"))),
        }
    }
}

/// Eps ratios of the default sweep.
pub const DEFAULT_SWEEP: [f64; 5] = [1e-1, 1e-3, 1e-6, 1e-9, 1e-12];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_points: usize,
    pub seed: u64,
    pub k: usize,
    pub d: usize,
    pub embedding: StandardEmbedding,
    pub d_out: usize,
    pub mode: ModeKind,
    pub eps_ratio: f64,
    pub eps_ratios: Vec<f64>,
    pub hole: bool,
    pub input: Option<PathBuf>,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_points: 1000,
            seed: 0,
            k: 12,
            d: 2,
            embedding: StandardEmbedding::None,
            d_out: 18,
            mode: ModeKind::Regularized,
            eps_ratio: 1e-3,
            eps_ratios: DEFAULT_SWEEP.to_vec(),
            hole: true,
            input: None,
            out: PathBuf::from("out"),
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| CliError::Config(format!("invalid value '{value}' for '{key}'")))
}

pub fn parse_ratio_list(value: &str) -> Result<Vec<f64>, CliError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse::<f64>("eps_ratios", s))
        .collect()
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(CliError::Config(format!("invalid boolean '{other}' for '{key}'"))),
    }
}

impl ExperimentConfig {
    /// Applies one `key=value` setting. Keys match the long flag names with
    /// `-` or `_` accepted interchangeably.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key.trim().replace('-', "_").as_str() {
            "n" | "n_points" => self.n_points = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "k" => self.k = parse(key, value)?,
            "d" => self.d = parse(key, value)?,
            "embed" | "embedding" => {
                self.embedding = value.trim().parse().map_err(|e: lle_core::LleError| CliError::Config(e.to_string()))?
            }
            "dout" | "d_out" => self.d_out = parse(key, value)?,
            "mode" => self.mode = value.trim().parse()?,
            "eps_ratio" => self.eps_ratio = parse(key, value)?,
            "eps_ratios" => self.eps_ratios = parse_ratio_list(value)?,
            "hole" => self.hole = parse_bool(key, value)?,
            "input" => self.input = Some(PathBuf::from(value.trim())),
            "out" => self.out = PathBuf::from(value.trim()),
            other => return Err(CliError::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", lineno + 1)))?;
            self.set(key, value)
                .map_err(|e| CliError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn weight_mode(&self) -> WeightMode {
        match self.mode {
            ModeKind::Exact => WeightMode::Exact,
            ModeKind::Regularized => WeightMode::Regularized(self.eps_ratio),
        }
    }

    /// Checks the settings needed to produce the point cloud.
    pub fn validate_data(&self) -> Result<(), CliError> {
        if self.input.is_none() && self.n_points == 0 {
            return Err(CliError::Config("n must be positive".into()));
        }
        if self.embedding != StandardEmbedding::None && self.d_out < 3 {
            return Err(CliError::Config(format!("dout must be at least 3, got {}", self.d_out)));
        }
        Ok(())
    }

    /// Checks every setting that does not depend on the data itself.
    pub fn validate(&self) -> Result<(), CliError> {
        self.validate_data()?;
        let bad = |m: String| Err(CliError::Config(m));
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if self.input.is_none() && self.k >= self.n_points {
            return bad(format!("k must be less than n (k={}, n={})", self.k, self.n_points));
        }
        if self.d == 0 {
            return bad("d must be positive".into());
        }
        if self.mode == ModeKind::Regularized && !(self.eps_ratio > 0.0 && self.eps_ratio.is_finite()) {
            return bad(format!("eps-ratio must be positive, got {}", self.eps_ratio));
        }
        Ok(())
    }
}
