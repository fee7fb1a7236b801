//! Settings from an optional TOML file (path in `ZETADIST_CONFIG` or
//! `--config`), overridden by command-line flags.

use std::path::Path;

use serde::{Deserialize, Serialize};
use zetadist_core::verify::GridConfig;
use zetadist_core::QuadratureConfig;

use crate::output::OutputFormat;
use crate::CliError;

pub const CONFIG_ENV: &str = "ZETADIST_CONFIG";

/// A closed range `lo, lo + step, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64, step: f64) -> Self {
        Range { lo, hi, step }
    }

    pub fn points(&self) -> Vec<f64> {
        zetadist_core::verify::linear_grid(self.lo, self.hi, self.step)
    }

    /// Parse `lo:hi:step`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || CliError::Usage(format!("grid `{text}` is not `default` or `lo:hi:step`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let r = Range::new(v[0], v[1], v[2]);
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<(), CliError> {
        let ok = self.lo.is_finite() && self.hi.is_finite() && self.step > 0.0 && self.hi >= self.lo;
        if !ok {
            return Err(CliError::Usage(format!("grid {}:{}:{} needs lo <= hi and step > 0", self.lo, self.hi, self.step)));
        }
        if (self.hi - self.lo) / self.step > 1e6 {
            return Err(CliError::Usage("grid has more than a million points".into()));
        }
        Ok(())
    }
}

/// Default tabulation grids of the `dist` command.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlotGrids {
    pub y: Range,
    pub t: Range,
    pub p: Range,
    /// Both axes of the two-dimensional density grid.
    pub plane: Range,
    /// Both axes of the two-dimensional cf grid.
    pub t2: Range,
}

impl Default for PlotGrids {
    fn default() -> Self {
        PlotGrids {
            y: Range::new(-10.0, 10.0, 0.25),
            t: Range::new(-20.0, 20.0, 0.25),
            p: Range::new(0.01, 0.99, 0.01),
            plane: Range::new(-8.0, 4.0, 0.5),
            t2: Range::new(-8.0, 8.0, 1.0),
        }
    }
}

/// Contents of the config file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
    pub quadrature: Option<QuadratureConfig>,
    pub grid: Option<GridConfig>,
    pub plot: Option<PlotGrids>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }
}

/// Effective settings of one invocation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CliConfig {
    pub quadrature: QuadratureConfig,
    pub format: OutputFormat,
    pub seed: u64,
    pub jobs: usize,
    pub grid: GridConfig,
    pub plot: PlotGrids,
}

/// Flag values that override the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlagOverrides {
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
}

impl CliConfig {
    pub fn resolve(file: FileConfig, flags: FlagOverrides) -> Result<Self, CliError> {
        let mut quadrature = file.quadrature.unwrap_or_default();
        if let Some(t) = flags.tol.or(file.tol) {
            quadrature.rel_tol = t;
        }
        quadrature.validate()?;
        let jobs = flags.jobs.or(file.jobs).unwrap_or(1);
        if jobs == 0 {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        let plot = file.plot.unwrap_or_default();
        for r in [plot.y, plot.t, plot.p, plot.plane, plot.t2] {
            r.check()?;
        }
        Ok(CliConfig {
            quadrature,
            format: flags.format.or(file.format).unwrap_or_default(),
            seed: flags.seed.or(file.seed).unwrap_or(0),
            jobs,
            grid: file.grid.unwrap_or_default(),
            plot,
        })
    }
}
