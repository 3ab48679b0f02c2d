//! Contraction certificates, the Picard iteration on the Duhamel map and the
//! windowed global solve.
//!
//! The Duhamel map is a contraction in the `W^{(1,2),2}` norm on `[0, T]`
//! with constant
//!
//! ```text
//! kappa(T) = nu l sqrt(T^2 e^{2aT} (1 + 2 [a + |b| + ||J||_1]^2) + 2)
//! ```
//!
//! which depends on the kernels, the rule `F` and `T` but never on the
//! initial data. A window length certified once can therefore be reused from
//! any restart point, which is how [`global_solve`] extends the solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldPhysical, SpectralGrid};
use crate::kernels::{compute_nu, validate_kernels, Kernel, ValidationReport, SIGN_TOLERANCE};
use crate::nonlinearity::Nonlinearity;
use crate::norms::{w122_distance, w122_norm};
use crate::propagation::{DuhamelMap, ModelParams, Trajectory};

/// Default relative magnitude threshold for spectral supports.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;
/// Default allowed excess of a measured contraction ratio over `kappa`.
pub const RATIO_SLACK: f64 = 0.05;

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and >= 0, got {v}"
        )))
    }
}

fn check_pos(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be finite and > 0, got {v}"
        )))
    }
}

/// `nu l sqrt(T^2 e^{2aT} (1 + 2 [a + |b| + j_l1]^2) + 2)`.
///
/// `l = 0` (a production term independent of `u`) gives `kappa = 0`.
pub fn contraction_constant(nu: f64, l: f64, a: f64, b: f64, j_l1: f64, horizon: f64) -> Result<f64> {
    check_pos("nu", nu)?;
    check_nonneg("l", l)?;
    check_nonneg("a", a)?;
    check_nonneg("||J||_1", j_l1)?;
    check_pos("T", horizon)?;
    if !b.is_finite() {
        return Err(Error::InvalidParameter(format!("b must be finite, got {b}")));
    }
    let rate = a + b.abs() + j_l1;
    let growth = (2.0 * a * horizon).exp();
    let inner = horizon * horizon * growth * (1.0 + 2.0 * rate * rate) + 2.0;
    Ok(nu * l * inner.sqrt())
}

/// Largest `T` with `kappa(T) <= 1 - margin`.
///
/// `None` when even `kappa(0+) = nu l sqrt(2)` misses the target;
/// `Some(inf)` when `l = 0`.
pub fn max_horizon(nu: f64, l: f64, a: f64, b: f64, j_l1: f64, margin: f64) -> Result<Option<f64>> {
    if !(0.0..1.0).contains(&margin) {
        return Err(Error::InvalidParameter(format!(
            "margin must lie in [0, 1), got {margin}"
        )));
    }
    check_pos("nu", nu)?;
    check_nonneg("l", l)?;
    let target = 1.0 - margin;
    if nu * l * std::f64::consts::SQRT_2 >= target {
        return Ok(None);
    }
    if l == 0.0 {
        return Ok(Some(f64::INFINITY));
    }
    let kappa = |t: f64| contraction_constant(nu, l, a, b, j_l1, t);
    let mut lo = 0.0;
    let mut hi = 1.0;
    while kappa(hi)? <= target {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Ok(Some(f64::INFINITY));
        }
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if kappa(mid)? <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// Whether `supp F(0, .)^ ∩ supp G^` has positive measure on the grid.
///
/// Supports are the frequencies where the magnitude exceeds
/// `rel_threshold` times the spectrum's maximum; the measure is
/// `dp * |S_F ∩ S_G|`.
pub fn nontriviality_check(
    f: &Nonlinearity,
    g: &Kernel,
    grid: &SpectralGrid,
    rel_threshold: f64,
) -> Result<(bool, f64)> {
    let f0 = f.f0_spectrum(grid)?;
    let support = |coeffs: &[crate::Complex]| {
        let peak = coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        coeffs
            .iter()
            .map(|c| peak > 0.0 && c.norm() > rel_threshold * peak)
            .collect::<Vec<bool>>()
    };
    let sf = support(&f0.coeffs);
    let sg = support(&g.symbol.coeffs);
    let count = sf.iter().zip(&sg).filter(|(a, b)| **a && **b).count();
    let measure = grid.dp() * count as f64;
    Ok((measure > 0.0, measure))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub nu: f64,
    pub l: f64,
    pub k_growth: f64,
    pub a: f64,
    pub b: f64,
    pub horizon: f64,
    pub j_l1: f64,
    pub kappa: f64,
    /// `kappa < 1`.
    pub passes: bool,
    pub margin: f64,
    /// Largest certifiable window length; absent when `nu l sqrt(2) >= 1 - margin`.
    pub t_max: Option<f64>,
    /// Every window length is certified (`l = 0`).
    pub t_max_unbounded: bool,
    pub nontrivial_support: bool,
    pub overlap_measure: f64,
    pub kernels: ValidationReport,
}

impl Certificate {
    /// Kernel hypotheses hold and the map contracts.
    pub fn holds(&self) -> bool {
        self.passes && self.kernels.passes
    }
}

/// Validates the kernels and evaluates `nu`, `kappa(T)`, the maximal horizon
/// and the support-overlap condition.
pub fn compute_certificate(
    grid: &SpectralGrid,
    params: &ModelParams,
    j: &Kernel,
    g: &Kernel,
    f: &Nonlinearity,
    margin: f64,
    support_threshold: f64,
) -> Result<Certificate> {
    params.validate()?;
    let kernels = validate_kernels(grid, j, g, SIGN_TOLERANCE);
    let nu = compute_nu(g)?;
    let l = f.lipschitz_l;
    let kappa = contraction_constant(nu, l, params.a, params.b, j.l1_norm, params.horizon)?;
    let t_max = max_horizon(nu, l, params.a, params.b, j.l1_norm, margin)?;
    let (nontrivial_support, overlap_measure) = nontriviality_check(f, g, grid, support_threshold)?;
    Ok(Certificate {
        nu,
        l,
        k_growth: f.growth_k,
        a: params.a,
        b: params.b,
        horizon: params.horizon,
        j_l1: j.l1_norm,
        kappa,
        passes: kappa < 1.0,
        margin,
        t_max: t_max.filter(|t| t.is_finite()),
        t_max_unbounded: t_max.is_some_and(f64::is_infinite),
        nontrivial_support,
        overlap_measure,
        kernels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialGuess {
    FreeEvolution,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PicardOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub ratio_slack: f64,
    /// Certified contraction constant; enables the ratio diagnostic.
    pub kappa: Option<f64>,
    /// Iterate even when `kappa >= 1`.
    pub force: bool,
    pub initial_guess: InitialGuess,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 200,
            ratio_slack: RATIO_SLACK,
            kappa: None,
            force: false,
            initial_guess: InitialGuess::FreeEvolution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PicardReport {
    pub iterations: usize,
    /// `||u^(n+1) - u^(n)||_W` per iteration.
    pub residuals: Vec<f64>,
    /// `residual[n] / residual[n-1]`, measured while above the rounding floor.
    pub measured_ratios: Vec<f64>,
    pub converged: bool,
    pub final_residual: f64,
    pub kappa: Option<f64>,
}

impl PicardReport {
    pub fn max_ratio(&self) -> Option<f64> {
        self.measured_ratios.iter().copied().reduce(f64::max)
    }

    /// Geometric-mean contraction ratio over the measured iterations.
    pub fn fitted_ratio(&self) -> Option<f64> {
        if self.measured_ratios.is_empty() {
            return None;
        }
        let mean_log =
            self.measured_ratios.iter().map(|r| r.ln()).sum::<f64>() / self.measured_ratios.len() as f64;
        Some(mean_log.exp())
    }
}

/// Picard iteration `u^(n+1) = tau(u^(n))` until the `W` distance between
/// successive iterates drops to `tol`.
pub fn picard_iterate(map: &DuhamelMap<'_>, opts: &PicardOptions) -> Result<(Trajectory, PicardReport)> {
    if let Some(kappa) = opts.kappa {
        if kappa >= 1.0 && !opts.force {
            return Err(Error::Uncertified { kappa });
        }
    }
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {}",
            opts.tol
        )));
    }
    let grid = map.grid;
    let mut current = match opts.initial_guess {
        InitialGuess::FreeEvolution => map.free_evolution(),
        InitialGuess::Zero => Trajectory::zeros(grid, &map.params),
    };
    let mut residuals = Vec::new();
    let mut ratios = Vec::new();
    let mut excess_run = 0;
    let mut floor = 0.0;
    for iteration in 1..=opts.max_iter {
        let next = map.apply_checked(&current)?;
        let residual = w122_distance(grid, &next, &current)?;
        if iteration == 1 {
            floor = 1e-12 * w122_norm(grid, &next)?.w122;
        }
        if let Some(&previous) = residuals.last() {
            if previous > floor {
                let ratio: f64 = residual / previous;
                ratios.push(ratio);
                match opts.kappa {
                    Some(kappa) if !opts.force && ratio > kappa * (1.0 + opts.ratio_slack) => {
                        excess_run += 1;
                        if excess_run >= 3 {
                            residuals.push(residual);
                            return Err(Error::RatioExceeded {
                                ratio,
                                kappa,
                                slack: opts.ratio_slack,
                                residuals,
                            });
                        }
                    }
                    _ => excess_run = 0,
                }
            }
        }
        residuals.push(residual);
        current = next;
        if residual <= opts.tol {
            let report = PicardReport {
                iterations: iteration,
                final_residual: residual,
                residuals,
                measured_ratios: ratios,
                converged: true,
                kappa: opts.kappa,
            };
            return Ok((current, report));
        }
    }
    Err(Error::MaxIterations {
        max_iter: opts.max_iter,
        tol: opts.tol,
        last: residuals.last().copied().unwrap_or(f64::NAN),
        residuals,
    })
}

/// Builds the Duhamel map for the data and runs [`picard_iterate`].
#[allow(clippy::too_many_arguments)]
pub fn picard_solve(
    grid: &SpectralGrid,
    params: &ModelParams,
    j: &Kernel,
    g: &Kernel,
    f: &Nonlinearity,
    u0: &FieldPhysical,
    opts: &PicardOptions,
) -> Result<(Trajectory, PicardReport)> {
    let map = DuhamelMap::new(grid, *params, j, g, f, u0)?;
    picard_iterate(&map, opts)
}

/// Chains `n_windows` Picard solves of length `T` each, restarting every
/// window from the terminal slice of the previous one. Shared endpoint
/// slices appear once in the result.
pub fn global_iterate(
    map: &DuhamelMap<'_>,
    n_windows: usize,
    opts: &PicardOptions,
) -> Result<(Trajectory, Vec<PicardReport>)> {
    if n_windows == 0 {
        return Err(Error::InvalidParameter("need at least one window".into()));
    }
    let mut reports = Vec::with_capacity(n_windows);
    let mut window_map = map.clone();
    let mut total: Option<Trajectory> = None;
    for index in 0..n_windows {
        if index > 0 {
            let start = total.as_ref().expect("previous window").last().clone();
            window_map = window_map.restarted(&start).map_err(|e| Error::Window {
                index,
                source: Box::new(e),
            })?;
        }
        let (traj, report) = picard_iterate(&window_map, opts).map_err(|e| Error::Window {
            index,
            source: Box::new(e),
        })?;
        reports.push(report);
        match total.as_mut() {
            None => total = Some(traj),
            Some(t) => t.append_window(traj),
        }
    }
    Ok((total.expect("at least one window"), reports))
}

#[allow(clippy::too_many_arguments)]
pub fn global_solve(
    grid: &SpectralGrid,
    window_params: &ModelParams,
    j: &Kernel,
    g: &Kernel,
    f: &Nonlinearity,
    u0: &FieldPhysical,
    n_windows: usize,
    opts: &PicardOptions,
) -> Result<(Trajectory, Vec<PicardReport>)> {
    let map = DuhamelMap::new(grid, *window_params, j, g, f, u0)?;
    global_iterate(&map, n_windows, opts)
}
