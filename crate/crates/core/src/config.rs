//! Batch run configuration (TOML) and assembly of the numerical problem.
//!
//! ```toml
//! [grid]
//! half_length = 20.0
//! n_points = 512
//!
//! [params]
//! a = 0.5
//! b = 1.0
//! horizon = 1.0
//! n_steps = 200
//!
//! [kernels.j]
//! kind = "negative_gaussian"
//! amplitude = 0.3989422804014327
//! width = 1.0
//!
//! [kernels.g]
//! kind = "tabulated"
//! path = "g.txt"
//!
//! [nonlinearity]
//! kind = "affine_offset"
//! c = 0.05
//! offset = { kind = "gaussian", center = 0.0, width = 1.0, amplitude = 0.1 }
//!
//! [initial]
//! kind = "gaussian"
//! center = 0.0
//! width = 1.0
//! amplitude = 1.0
//! ```
//!
//! Relative paths resolve against the directory of the config file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixedpoint::{PicardOptions, RATIO_SLACK, SUPPORT_THRESHOLD};
use crate::grid::{FieldPhysical, SpectralGrid, TailCheck};
use crate::io::{read_two_column, samples_on_grid};
use crate::kernels::{Kernel, KernelSpec};
use crate::nonlinearity::Nonlinearity;
use crate::propagation::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub half_length: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub a: f64,
    pub b: f64,
    pub horizon: f64,
    pub n_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelConfig {
    NegativeGaussian { amplitude: f64, width: f64 },
    Gaussian { amplitude: f64, width: f64 },
    Laplace { amplitude: f64, scale: f64 },
    Tabulated { path: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelsConfig {
    pub j: KernelConfig,
    pub g: KernelConfig,
}

/// A field on the line: the initial condition or the offset `h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldConfig {
    Gaussian { center: f64, width: f64, amplitude: f64 },
    Tabulated { path: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonlinearityConfig {
    Linear {
        c: f64,
    },
    SaturatingLinear {
        c: f64,
        u_cap: f64,
    },
    AffineOffset {
        c: f64,
        offset: FieldConfig,
    },
    /// Two-column `(u, F)` table.
    TabulatedPointwise {
        path: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub ratio_slack: f64,
    pub margin: f64,
    pub n_windows: usize,
    pub tail_threshold: f64,
    pub support_threshold: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            ratio_slack: RATIO_SLACK,
            margin: 0.0,
            n_windows: 1,
            tail_threshold: TailCheck::default().threshold,
            support_threshold: SUPPORT_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryFormat {
    Csv,
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: String,
    pub formats: Vec<TrajectoryFormat>,
    pub report: String,
    pub trajectory_stem: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            dir: "out".into(),
            formats: vec![TrajectoryFormat::Binary],
            report: "report.json".into(),
            trajectory_stem: "trajectory".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub params: ParamsConfig,
    pub kernels: KernelsConfig,
    pub nonlinearity: NonlinearityConfig,
    pub initial: FieldConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config file; returns it with the directory relative paths resolve against.
    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let config = Self::from_toml(&text)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((config, base))
    }

    pub fn tail_check(&self) -> TailCheck {
        TailCheck::with_threshold(self.solver.tail_threshold)
    }

    /// Checks scalar fields and that referenced files exist.
    pub fn validate(&self, base: &Path) -> Result<()> {
        if !self.grid.n_points.is_multiple_of(2) || self.grid.n_points < 8 {
            return Err(Error::Config(format!(
                "grid.n_points must be even and >= 8, got {}",
                self.grid.n_points
            )));
        }
        if !(self.params.a >= 0.0) {
            return Err(Error::Config(format!(
                "params.a must be >= 0, got {}",
                self.params.a
            )));
        }
        if !(self.params.horizon > 0.0) {
            return Err(Error::Config(format!(
                "params.horizon must be > 0, got {}",
                self.params.horizon
            )));
        }
        let s = &self.solver;
        if !(s.tol > 0.0) || s.max_iter == 0 || s.n_windows == 0 {
            return Err(Error::Config(
                "solver.tol, max_iter and n_windows must be positive".into(),
            ));
        }
        if !(0.0..1.0).contains(&s.margin) || !(s.ratio_slack >= 0.0) {
            return Err(Error::Config(
                "solver.margin must lie in [0, 1) and ratio_slack >= 0".into(),
            ));
        }
        for path in self.referenced_paths() {
            let full = base.join(path);
            if !full.is_file() {
                return Err(Error::Config(format!("missing file {}", full.display())));
            }
        }
        Ok(())
    }

    fn referenced_paths(&self) -> Vec<&str> {
        let mut paths = Vec::new();
        for k in [&self.kernels.j, &self.kernels.g] {
            if let KernelConfig::Tabulated { path } = k {
                paths.push(path.as_str());
            }
        }
        match &self.nonlinearity {
            NonlinearityConfig::TabulatedPointwise { path } => paths.push(path),
            NonlinearityConfig::AffineOffset {
                offset: FieldConfig::Tabulated { path },
                ..
            } => paths.push(path),
            _ => {}
        }
        if let FieldConfig::Tabulated { path } = &self.initial {
            paths.push(path);
        }
        paths
    }

    pub fn picard_options(&self) -> PicardOptions {
        PicardOptions {
            tol: self.solver.tol,
            max_iter: self.solver.max_iter,
            ratio_slack: self.solver.ratio_slack,
            ..PicardOptions::default()
        }
    }
}

fn load_field(grid: &SpectralGrid, spec: &FieldConfig, base: &Path) -> Result<FieldPhysical> {
    match spec {
        FieldConfig::Gaussian {
            center,
            width,
            amplitude,
        } => {
            if !(*width > 0.0) {
                return Err(Error::Config(format!("gaussian width must be > 0, got {width}")));
            }
            Ok(grid.sample(|x| amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp()))
        }
        FieldConfig::Tabulated { path } => {
            let full = base.join(path);
            let (xs, ys) = read_two_column(&full)?;
            Ok(FieldPhysical::new(samples_on_grid(grid, &xs, ys, path)?))
        }
    }
}

fn kernel_spec(grid: &SpectralGrid, spec: &KernelConfig, base: &Path) -> Result<KernelSpec> {
    Ok(match spec {
        KernelConfig::NegativeGaussian { amplitude, width } => KernelSpec::NegativeGaussian {
            amplitude: *amplitude,
            width: *width,
        },
        KernelConfig::Gaussian { amplitude, width } => KernelSpec::Gaussian {
            amplitude: *amplitude,
            width: *width,
        },
        KernelConfig::Laplace { amplitude, scale } => KernelSpec::Laplace {
            amplitude: *amplitude,
            scale: *scale,
        },
        KernelConfig::Tabulated { path } => {
            let (xs, ys) = read_two_column(&base.join(path))?;
            KernelSpec::Tabulated {
                samples: samples_on_grid(grid, &xs, ys, path)?,
            }
        }
    })
}

/// Everything a run needs, built from a validated config.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: SpectralGrid,
    pub params: ModelParams,
    pub j: Kernel,
    pub g: Kernel,
    pub f: Nonlinearity,
    pub u0: FieldPhysical,
    pub tail: TailCheck,
}

impl Problem {
    /// Parses and validates the config; kernel and field errors surface as
    /// non-config errors (the data is well-formed but unusable).
    pub fn build(config: &RunConfig, base: &Path) -> Result<Self> {
        config.validate(base)?;
        let grid = SpectralGrid::new(config.grid.half_length, config.grid.n_points)
            .map_err(|e| Error::Config(e.to_string()))?;
        let p = &config.params;
        let params =
            ModelParams::new(p.a, p.b, p.horizon, p.n_steps).map_err(|e| Error::Config(e.to_string()))?;
        let tail = config.tail_check();
        let j = Kernel::new(&grid, kernel_spec(&grid, &config.kernels.j, base)?)?;
        tail.check(&grid, &j.phys, "kernel J")?;
        let g = Kernel::production(&grid, kernel_spec(&grid, &config.kernels.g, base)?, &tail)?;
        let f = match &config.nonlinearity {
            NonlinearityConfig::Linear { c } => Nonlinearity::linear(&grid, *c)?,
            NonlinearityConfig::SaturatingLinear { c, u_cap } => {
                Nonlinearity::saturating_linear(&grid, *c, *u_cap)?
            }
            NonlinearityConfig::AffineOffset { c, offset } => {
                let h = load_field(&grid, offset, base)?;
                tail.check(&grid, &h, "offset h")?;
                Nonlinearity::affine_offset(&grid, *c, h)?
            }
            NonlinearityConfig::TabulatedPointwise { path } => {
                let (u, v) = read_two_column(&base.join(path))?;
                Nonlinearity::tabulated_pointwise(&grid, u, v)?
            }
        };
        let u0 = load_field(&grid, &config.initial, base)?;
        u0.check_finite()?;
        tail.check(&grid, &u0, "initial condition")?;
        Ok(Self {
            grid,
            params,
            j,
            g,
            f,
            u0,
            tail,
        })
    }

    /// The same problem with horizon `T / n` and `M / n` steps.
    pub fn window_params(&self, n_windows: usize) -> Result<ModelParams> {
        if n_windows == 0 || !self.params.n_steps.is_multiple_of(n_windows) {
            return Err(Error::Config(format!(
                "n_steps = {} is not divisible into {n_windows} windows",
                self.params.n_steps
            )));
        }
        ModelParams::new(
            self.params.a,
            self.params.b,
            self.params.horizon / n_windows as f64,
            self.params.n_steps / n_windows,
        )
    }
}
