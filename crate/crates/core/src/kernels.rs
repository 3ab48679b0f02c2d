//! Convolution kernels `J` (nonlocal diffusion) and `G` (nonlocal production).
//!
//! A kernel carries its grid samples, its symbol `K_hat(p_k)` in the unitary
//! convention (the factor `sqrt(2 pi)` of the convolution theorem is applied
//! by the propagator, not stored here) and its `L1` norms. The production
//! kernel additionally needs `||G''||_1`, which together with `||G||_1`
//! gives `nu = sqrt(||G||_1^2 + ||G''||_1^2)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldPhysical, FieldSpectral, SpectralGrid, TailCheck};
use crate::Complex;

/// Default tolerance on `max_k Re J_hat(p_k)`.
pub const SIGN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `-amplitude * exp(-x^2 / (2 width^2))`
    NegativeGaussian { amplitude: f64, width: f64 },
    /// `amplitude * exp(-x^2 / (2 width^2))`
    Gaussian { amplitude: f64, width: f64 },
    /// `amplitude * exp(-|x| / scale)`; no integrable second derivative.
    Laplace { amplitude: f64, scale: f64 },
    /// Samples on the grid points.
    Tabulated { samples: Vec<f64> },
}

impl KernelSpec {
    fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "kernel {name} must be positive and finite, got {v}"
                )))
            }
        };
        match *self {
            KernelSpec::NegativeGaussian { amplitude, width } | KernelSpec::Gaussian { amplitude, width } => {
                positive("amplitude", amplitude)?;
                positive("width", width)
            }
            KernelSpec::Laplace { amplitude, scale } => {
                if !amplitude.is_finite() {
                    return Err(Error::InvalidParameter("kernel amplitude is not finite".into()));
                }
                positive("scale", scale)
            }
            KernelSpec::Tabulated { .. } => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::NegativeGaussian { .. } => "negative_gaussian",
            KernelSpec::Gaussian { .. } => "gaussian",
            KernelSpec::Laplace { .. } => "laplace",
            KernelSpec::Tabulated { .. } => "tabulated",
        }
    }

    fn evaluate(&self, x: f64) -> f64 {
        match *self {
            KernelSpec::NegativeGaussian { amplitude, width } => {
                -amplitude * (-x * x / (2.0 * width * width)).exp()
            }
            KernelSpec::Gaussian { amplitude, width } => amplitude * (-x * x / (2.0 * width * width)).exp(),
            KernelSpec::Laplace { amplitude, scale } => amplitude * (-x.abs() / scale).exp(),
            KernelSpec::Tabulated { .. } => unreachable!("tabulated kernels are not evaluated pointwise"),
        }
    }

    /// Exact `||K''||_1` for Gaussians: `|K''|` has kinks at `x = +-width`,
    /// which would limit a sampled rectangle rule to second order.
    fn exact_second_derivative_l1(&self) -> Option<f64> {
        match *self {
            KernelSpec::NegativeGaussian { amplitude, width } | KernelSpec::Gaussian { amplitude, width } => {
                Some(4.0 * amplitude * (-0.5f64).exp() / width)
            }
            _ => None,
        }
    }

    /// Continuous symbol `K_hat(p)` on the whole line, for descriptor kernels.
    pub fn exact_symbol(&self, p: f64) -> Option<f64> {
        let gaussian_hat =
            |amplitude: f64, width: f64| amplitude * width * (-p * p * width * width / 2.0).exp();
        match *self {
            KernelSpec::NegativeGaussian { amplitude, width } => Some(-gaussian_hat(amplitude, width)),
            KernelSpec::Gaussian { amplitude, width } => Some(gaussian_hat(amplitude, width)),
            KernelSpec::Laplace { amplitude, scale } => {
                Some(amplitude * 2.0 * scale / ((2.0 * PI).sqrt() * (1.0 + scale * scale * p * p)))
            }
            KernelSpec::Tabulated { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub spec: KernelSpec,
    pub phys: FieldPhysical,
    pub symbol: FieldSpectral,
    pub l1_norm: f64,
    /// `||K''||_1`, computed for production kernels only.
    pub l1_norm_second_derivative: Option<f64>,
    /// Set when `||K''||_1` came from spectral differentiation of samples
    /// and therefore depends on the grid.
    pub second_derivative_grid_dependent: bool,
}

impl Kernel {
    /// Builds a kernel without its second-derivative norm (enough for `J`).
    pub fn new(grid: &SpectralGrid, spec: KernelSpec) -> Result<Self> {
        spec.validate()?;
        let phys = match &spec {
            KernelSpec::Tabulated { samples } => {
                if samples.len() != grid.len() {
                    return Err(Error::LengthMismatch {
                        expected: grid.len(),
                        got: samples.len(),
                    });
                }
                FieldPhysical::new(samples.clone())
            }
            other => grid.sample(|x| other.evaluate(x)),
        };
        phys.check_finite()?;
        let mut symbol = grid.fourier_forward(&phys)?;
        grid.symmetrize(&mut symbol);
        let l1_norm = grid.l1(&phys);
        Ok(Self {
            spec,
            phys,
            symbol,
            l1_norm,
            l1_norm_second_derivative: None,
            second_derivative_grid_dependent: false,
        })
    }

    /// Builds a production kernel, including `||G''||_1`.
    pub fn production(grid: &SpectralGrid, spec: KernelSpec, tail: &TailCheck) -> Result<Self> {
        let mut kernel = Self::new(grid, spec)?;
        let g2 = kernel.second_derivative_l1(grid, tail)?;
        kernel.l1_norm_second_derivative = Some(g2);
        kernel.second_derivative_grid_dependent = matches!(kernel.spec, KernelSpec::Tabulated { .. });
        Ok(kernel)
    }

    /// `dx * sum_j |K''(x_j)|`, from the closed form for descriptor kernels
    /// and from spectral differentiation for tabulated ones.
    pub fn second_derivative_l1(&self, grid: &SpectralGrid, tail: &TailCheck) -> Result<f64> {
        tail.check(grid, &self.phys, &format!("{} kernel", self.spec.name()))?;
        let value = match &self.spec {
            KernelSpec::Tabulated { .. } => grid.l1(&grid.spectral_second_derivative(&self.phys)?),
            KernelSpec::Laplace { .. } => return Err(Error::NoSecondDerivative(self.spec.name().into())),
            spec => spec.exact_second_derivative_l1().expect("gaussian kernel"),
        };
        if !value.is_finite() {
            return Err(Error::NoSecondDerivative(self.spec.name().into()));
        }
        Ok(value)
    }

    pub fn tail_ratio(&self, grid: &SpectralGrid, tail: &TailCheck) -> f64 {
        tail.tail_ratio(grid, &self.phys)
    }

    /// Largest `Re K_hat(p_k)` and the frequency where it occurs.
    pub fn max_real_symbol(&self, grid: &SpectralGrid) -> (f64, f64) {
        self.symbol.coeffs.iter().zip(grid.frequencies()).fold(
            (f64::NEG_INFINITY, 0.0),
            |(best, at), (c, &p)| {
                if c.re > best {
                    (c.re, p)
                } else {
                    (best, at)
                }
            },
        )
    }

    /// `sqrt(2 pi) * K_hat(p_k)`, the convolution multiplier.
    pub fn multiplier(&self) -> Vec<Complex> {
        let s = (2.0 * PI).sqrt();
        self.symbol.coeffs.iter().map(|c| c * s).collect()
    }
}

/// `nu = sqrt(||G||_1^2 + ||G''||_1^2)`.
pub fn nu_from_norms(g_l1: f64, g2_l1: f64) -> Result<f64> {
    if !(g_l1.is_finite() && g2_l1.is_finite()) || g_l1 < 0.0 || g2_l1 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel norms must be finite and nonnegative, got {g_l1}, {g2_l1}"
        )));
    }
    let nu = g_l1.hypot(g2_l1);
    if nu <= 0.0 {
        return Err(Error::TrivialKernel);
    }
    Ok(nu)
}

pub fn compute_nu(g: &Kernel) -> Result<f64> {
    let g2 = g.l1_norm_second_derivative.ok_or_else(|| {
        Error::InvalidParameter("production kernel is missing its second-derivative norm".into())
    })?;
    nu_from_norms(g.l1_norm, g2)
}

#[derive(Debug, Clone)]
pub struct KernelPair {
    pub j: Kernel,
    pub g: Kernel,
    pub nu: f64,
}

impl KernelPair {
    pub fn new(j: Kernel, g: Kernel) -> Result<Self> {
        let nu = compute_nu(&g)?;
        Ok(Self { j, g, nu })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub max_re_j_symbol: f64,
    pub max_re_j_symbol_at: f64,
    /// Frequency of the worst violation of `Re J_hat <= tol`, if any.
    pub violating_frequency: Option<f64>,
    pub sign_tolerance: f64,
    pub j_l1: f64,
    pub g_l1: f64,
    pub g_second_derivative_l1: Option<f64>,
    pub g_second_derivative_grid_dependent: bool,
    pub j_nontrivial: bool,
    pub g_nontrivial: bool,
    pub g_norms_finite: bool,
    pub passes: bool,
}

/// Checks the kernel hypotheses at the grid frequencies: `Re J_hat <= tol`,
/// both kernels nontrivial, `||G||_1` and `||G''||_1` finite.
pub fn validate_kernels(grid: &SpectralGrid, j: &Kernel, g: &Kernel, tol: f64) -> ValidationReport {
    let (max_re, at) = j.max_real_symbol(grid);
    let violating_frequency = (max_re > tol).then_some(at);
    let j_nontrivial = j.l1_norm > 0.0;
    let g_nontrivial = g.l1_norm > 0.0;
    let g_norms_finite = g.l1_norm.is_finite() && g.l1_norm_second_derivative.is_some_and(f64::is_finite);
    ValidationReport {
        max_re_j_symbol: max_re,
        max_re_j_symbol_at: at,
        violating_frequency,
        sign_tolerance: tol,
        j_l1: j.l1_norm,
        g_l1: g.l1_norm,
        g_second_derivative_l1: g.l1_norm_second_derivative,
        g_second_derivative_grid_dependent: g.second_derivative_grid_dependent,
        j_nontrivial,
        g_nontrivial,
        g_norms_finite,
        passes: violating_frequency.is_none() && j_nontrivial && g_nontrivial && g_norms_finite,
    }
}
