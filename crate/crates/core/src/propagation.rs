//! The linear propagator and the Duhamel map `tau`.
//!
//! In Fourier space the equation reads `du_hat/dt = sigma(p) u_hat + g(p) f_hat`
//! with `sigma(p) = sqrt(2 pi) J_hat(p) + i b p + a` and
//! `g(p) = sqrt(2 pi) G_hat(p)`. For a given trajectory `v`, `tau(v)` is
//!
//! ```text
//! u_hat(p, t) = e^{t sigma} u0_hat + \int_0^t e^{(t-s) sigma} g f_hat_v(p, s) ds
//! ```
//!
//! evaluated with exact exponentials at the slice times and the trapezoidal
//! rule in `s`. The linear part therefore carries no time-discretization
//! error at all.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldPhysical, FieldSpectral, SpectralGrid};
use crate::kernels::{Kernel, SIGN_TOLERANCE};
use crate::nonlinearity::Nonlinearity;
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Linear production rate, `a >= 0`.
    pub a: f64,
    /// Transport speed.
    pub b: f64,
    /// Horizon `T`.
    pub horizon: f64,
    pub n_steps: usize,
}

impl ModelParams {
    pub fn new(a: f64, b: f64, horizon: f64, n_steps: usize) -> Result<Self> {
        let params = Self {
            a,
            b,
            horizon,
            n_steps,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a >= 0.0) {
            return Err(Error::InvalidParameter(format!("a must be >= 0, got {}", self.a)));
        }
        if !self.b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "b must be finite, got {}",
                self.b
            )));
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be positive".into()));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.n_steps as f64
    }

    pub fn time(&self, m: usize) -> f64 {
        m as f64 * self.dt()
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.n_steps).map(|m| self.time(m)).collect()
    }
}

/// Symbol `sigma_k = sqrt(2 pi) J_hat(p_k) + i b p_k + a` at every grid frequency.
///
/// The transport term is dropped at the unpaired mode `k = -N/2`: an odd
/// derivative of that mode has no real representative on the grid.
pub fn linear_symbol(grid: &SpectralGrid, params: &ModelParams, j: &Kernel) -> Vec<Complex> {
    j.multiplier()
        .iter()
        .zip(grid.frequencies())
        .enumerate()
        .map(|(i, (jm, &p))| {
            let transport = if i == 0 { 0.0 } else { params.b * p };
            jm + Complex::new(params.a, transport)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct PropagatorTable {
    n_points: usize,
    n_steps: usize,
    sigma: Vec<Complex>,
    /// `E(k, m)` stored at `m * N + k`.
    multipliers: Vec<Complex>,
}

impl PropagatorTable {
    /// Table without the sign check on `J_hat`, for forced uncertified runs.
    pub fn new_unchecked(grid: &SpectralGrid, params: &ModelParams, j: &Kernel) -> Self {
        let sigma = linear_symbol(grid, params, j);
        let dt = params.dt();
        let n = grid.len();
        let m_total = params.n_steps;
        let mut multipliers = Vec::with_capacity(n * (m_total + 1));
        for m in 0..=m_total {
            let t = m as f64 * dt;
            multipliers.extend(sigma.iter().map(|s| {
                if m == 0 {
                    Complex::new(1.0, 0.0)
                } else {
                    (s * t).exp()
                }
            }));
        }
        Self {
            n_points: n,
            n_steps: m_total,
            sigma,
            multipliers,
        }
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn sigma(&self) -> &[Complex] {
        &self.sigma
    }

    pub fn get(&self, k: usize, m: usize) -> Complex {
        self.multipliers[m * self.n_points + k]
    }

    /// `E(k, 0..=M)` for one mode.
    fn column(&self, k: usize) -> Vec<Complex> {
        (0..=self.n_steps).map(|m| self.get(k, m)).collect()
    }
}

/// `E(k, m) = exp(m dt sigma_k)` by direct exponentiation. Requires
/// `Re J_hat(p_k) <= 1e-12` at every grid frequency.
pub fn build_propagator(grid: &SpectralGrid, params: &ModelParams, j: &Kernel) -> Result<PropagatorTable> {
    params.validate()?;
    let (max_re, at) = j.max_real_symbol(grid);
    if max_re > SIGN_TOLERANCE {
        return Err(Error::AssumptionViolated(format!(
            "Re J_hat = {max_re:e} > 0 at p = {at}"
        )));
    }
    Ok(PropagatorTable::new_unchecked(grid, params, j))
}

/// Space-time solution on the slice times `t_m = m dt`, with its spectra and
/// the time derivative taken from the Fourier-side right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub slices: Vec<FieldPhysical>,
    pub spectral_slices: Vec<FieldSpectral>,
    pub dudt_slices: Vec<FieldPhysical>,
}

impl Trajectory {
    pub fn zeros(grid: &SpectralGrid, params: &ModelParams) -> Self {
        let count = params.n_steps + 1;
        Self {
            times: params.times(),
            slices: vec![FieldPhysical::zeros(grid.len()); count],
            spectral_slices: vec![FieldSpectral::zeros(grid.len()); count],
            dudt_slices: vec![FieldPhysical::zeros(grid.len()); count],
        }
    }

    /// Builds a trajectory from physical slices and their time derivatives.
    pub fn from_physical(
        grid: &SpectralGrid,
        times: Vec<f64>,
        slices: Vec<FieldPhysical>,
        dudt_slices: Vec<FieldPhysical>,
    ) -> Result<Self> {
        if slices.len() != times.len() || dudt_slices.len() != times.len() {
            return Err(Error::LengthMismatch {
                expected: times.len(),
                got: slices.len().min(dudt_slices.len()),
            });
        }
        let spectral_slices = slices
            .par_iter()
            .map(|s| grid.fourier_forward(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            times,
            slices,
            spectral_slices,
            dudt_slices,
        })
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    pub fn last(&self) -> &FieldPhysical {
        self.slices.last().expect("trajectory has at least one slice")
    }

    /// Slice-wise difference `self - other` on identical time nodes.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() || self.dudt_slices.len() != other.dudt_slices.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let sub_spec = |a: &FieldSpectral, b: &FieldSpectral| {
            FieldSpectral::new(a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect())
        };
        Ok(Self {
            times: self.times.clone(),
            slices: self
                .slices
                .iter()
                .zip(&other.slices)
                .map(|(a, b)| a.sub(b))
                .collect(),
            spectral_slices: self
                .spectral_slices
                .iter()
                .zip(&other.spectral_slices)
                .map(|(a, b)| sub_spec(a, b))
                .collect(),
            dudt_slices: self
                .dudt_slices
                .iter()
                .zip(&other.dudt_slices)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            times: self.times.clone(),
            slices: self.slices.iter().map(|s| s.scaled(c)).collect(),
            spectral_slices: self
                .spectral_slices
                .iter()
                .map(|s| FieldSpectral::new(s.coeffs.iter().map(|z| z * c).collect()))
                .collect(),
            dudt_slices: self.dudt_slices.iter().map(|s| s.scaled(c)).collect(),
        }
    }

    /// Appends `next`, whose first slice coincides with the last slice of `self`.
    pub fn append_window(&mut self, next: Trajectory) {
        let offset = *self.times.last().expect("nonempty trajectory");
        let mut slices = next.slices.into_iter();
        let mut spectral = next.spectral_slices.into_iter();
        let mut dudt = next.dudt_slices.into_iter();
        let mut times = next.times.into_iter();
        // shared endpoint: keep the restarted window's value
        if let (Some(s), Some(c), Some(d), Some(_)) =
            (slices.next(), spectral.next(), dudt.next(), times.next())
        {
            *self.slices.last_mut().unwrap() = s;
            *self.spectral_slices.last_mut().unwrap() = c;
            *self.dudt_slices.last_mut().unwrap() = d;
        }
        self.slices.extend(slices);
        self.spectral_slices.extend(spectral);
        self.dudt_slices.extend(dudt);
        self.times.extend(times.map(|t| t + offset));
    }
}

/// The Duhamel map for fixed kernels, nonlinearity, initial data and time grid.
#[derive(Debug, Clone)]
pub struct DuhamelMap<'a> {
    pub grid: &'a SpectralGrid,
    pub params: ModelParams,
    pub propagator: PropagatorTable,
    /// `sqrt(2 pi) G_hat(p_k)`.
    pub g_multiplier: Vec<Complex>,
    pub nonlinearity: &'a Nonlinearity,
    pub u0: FieldPhysical,
    pub u0_hat: FieldSpectral,
}

impl<'a> DuhamelMap<'a> {
    pub fn new(
        grid: &'a SpectralGrid,
        params: ModelParams,
        j: &Kernel,
        g: &Kernel,
        nonlinearity: &'a Nonlinearity,
        u0: &FieldPhysical,
    ) -> Result<Self> {
        let propagator = build_propagator(grid, &params, j)?;
        Self::with_propagator(grid, params, propagator, g, nonlinearity, u0)
    }

    pub fn with_propagator(
        grid: &'a SpectralGrid,
        params: ModelParams,
        propagator: PropagatorTable,
        g: &Kernel,
        nonlinearity: &'a Nonlinearity,
        u0: &FieldPhysical,
    ) -> Result<Self> {
        params.validate()?;
        if propagator.n_points() != grid.len() || propagator.n_steps() != params.n_steps {
            return Err(Error::LengthMismatch {
                expected: grid.len() * (params.n_steps + 1),
                got: propagator.n_points() * (propagator.n_steps() + 1),
            });
        }
        if g.phys.len() != grid.len() || nonlinearity.offset_h.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: g.phys.len().min(nonlinearity.offset_h.len()),
            });
        }
        u0.check_finite()?;
        let mut u0_hat = grid.fourier_forward(u0)?;
        grid.symmetrize(&mut u0_hat);
        Ok(Self {
            grid,
            params,
            propagator,
            g_multiplier: g.multiplier(),
            nonlinearity,
            u0: u0.clone(),
            u0_hat,
        })
    }

    /// Same map restarted from new initial data.
    pub fn restarted(&self, u0: &FieldPhysical) -> Result<Self> {
        let mut u0_hat = self.grid.fourier_forward(u0)?;
        self.grid.symmetrize(&mut u0_hat);
        Ok(Self {
            u0: u0.clone(),
            u0_hat,
            ..self.clone()
        })
    }

    fn check_input(&self, v: &Trajectory) -> Result<()> {
        if v.len() != self.params.n_steps + 1 {
            return Err(Error::LengthMismatch {
                expected: self.params.n_steps + 1,
                got: v.len(),
            });
        }
        if let Some(s) = v.slices.iter().find(|s| s.len() != self.grid.len()) {
            return Err(Error::LengthMismatch {
                expected: self.grid.len(),
                got: s.len(),
            });
        }
        Ok(())
    }

    /// `g_k * f_hat_v(p_k, t_n)` for every slice `n`.
    fn forcing(&self, v: &Trajectory) -> Result<Vec<Vec<Complex>>> {
        v.slices
            .par_iter()
            .map(|slice| {
                let f = self.nonlinearity.apply(slice)?;
                let f_hat = self.grid.fourier_forward(&f)?;
                Ok(f_hat
                    .coeffs
                    .iter()
                    .zip(&self.g_multiplier)
                    .map(|(c, g)| c * g)
                    .collect())
            })
            .collect()
    }

    /// `tau(v)`.
    pub fn apply(&self, v: &Trajectory) -> Result<Trajectory> {
        self.check_input(v)?;
        let forcing = self.forcing(v)?;
        Ok(self.assemble(Some(&forcing)))
    }

    /// `tau` with the production term switched off.
    pub fn free_evolution(&self) -> Trajectory {
        self.assemble(None)
    }

    fn assemble(&self, forcing: Option<&[Vec<Complex>]>) -> Trajectory {
        let n = self.grid.len();
        let m_total = self.params.n_steps;
        let dt = self.params.dt();
        // per-mode Duhamel sums, one column of length M + 1 per frequency
        let columns: Vec<Vec<Complex>> = (0..n)
            .into_par_iter()
            .map(|k| {
                let e = self.propagator.column(k);
                let u0 = self.u0_hat.coeffs[k];
                (0..=m_total)
                    .map(|m| {
                        let mut value = e[m] * u0;
                        if let Some(forcing) = forcing {
                            if m > 0 {
                                let mut acc = (e[m] * forcing[0][k] + e[0] * forcing[m][k]) * 0.5;
                                for s in 1..m {
                                    acc += e[m - s] * forcing[s][k];
                                }
                                value += acc * dt;
                            }
                        }
                        value
                    })
                    .collect()
            })
            .collect();

        let sigma = self.propagator.sigma();
        let slices: Vec<(FieldPhysical, FieldSpectral, FieldPhysical)> = (0..=m_total)
            .into_par_iter()
            .map(|m| {
                let mut spec = FieldSpectral::new(columns.iter().map(|c| c[m]).collect());
                self.grid.symmetrize(&mut spec);
                let mut dudt = FieldSpectral::new(
                    spec.coeffs
                        .iter()
                        .zip(sigma)
                        .enumerate()
                        .map(|(k, (u, s))| {
                            let f = forcing.map_or(Complex::new(0.0, 0.0), |f| f[m][k]);
                            s * u + f
                        })
                        .collect(),
                );
                self.grid.symmetrize(&mut dudt);
                let phys = self.grid.fourier_inverse(&spec).expect("symmetrized spectrum");
                let dudt_phys = self.grid.fourier_inverse(&dudt).expect("symmetrized spectrum");
                (phys, spec, dudt_phys)
            })
            .collect();

        let mut traj = Trajectory {
            times: self.params.times(),
            slices: Vec::with_capacity(m_total + 1),
            spectral_slices: Vec::with_capacity(m_total + 1),
            dudt_slices: Vec::with_capacity(m_total + 1),
        };
        for (phys, spec, dudt) in slices {
            traj.slices.push(phys);
            traj.spectral_slices.push(spec);
            traj.dudt_slices.push(dudt);
        }
        traj
    }

    /// `tau(v)`, failing on non-finite output.
    pub fn apply_checked(&self, v: &Trajectory) -> Result<Trajectory> {
        let u = self.apply(v)?;
        check_finite_trajectory(&u)?;
        Ok(u)
    }
}

fn check_finite_trajectory(u: &Trajectory) -> Result<()> {
    for (m, (s, d)) in u.slices.iter().zip(&u.dudt_slices).enumerate() {
        if s.check_finite().is_err() || d.check_finite().is_err() {
            return Err(Error::BlowUp { slice: m });
        }
    }
    Ok(())
}

/// `tau(v)` for the given data; see [`DuhamelMap`] to reuse the propagator.
pub fn apply_tau(
    grid: &SpectralGrid,
    params: &ModelParams,
    j: &Kernel,
    g: &Kernel,
    f: &Nonlinearity,
    u0: &FieldPhysical,
    v: &Trajectory,
) -> Result<Trajectory> {
    DuhamelMap::new(grid, *params, j, g, f, u0)?.apply_checked(v)
}

/// Exact linear evolution `e^{t sigma} u0_hat`.
pub fn free_evolution(
    grid: &SpectralGrid,
    params: &ModelParams,
    j: &Kernel,
    u0: &FieldPhysical,
) -> Result<Trajectory> {
    params.validate()?;
    let propagator = build_propagator(grid, params, j)?;
    u0.check_finite()?;
    let mut u0_hat = grid.fourier_forward(u0)?;
    grid.symmetrize(&mut u0_hat);
    let none = Nonlinearity::linear(grid, 0.0)?;
    let map = DuhamelMap {
        grid,
        params: *params,
        propagator,
        g_multiplier: vec![Complex::new(0.0, 0.0); grid.len()],
        nonlinearity: &none,
        u0: u0.clone(),
        u0_hat,
    };
    let traj = map.free_evolution();
    check_finite_trajectory(&traj)?;
    Ok(traj)
}
