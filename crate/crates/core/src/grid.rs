//! The truncated line `[-L, L)`, its collocation points and frequencies, and
//! the unitary Fourier transform
//!
//! ```text
//! phi_hat(p) = (2 pi)^{-1/2} \int phi(x) e^{-ipx} dx
//! ```
//!
//! discretized by the rectangle rule on the grid. With `x_j = -L + j dx` and
//! `p_k = pi k / L` the discrete sum reduces to an ordinary DFT times the
//! phase `(-1)^k`, so both directions run through `rustfft`.
//!
//! Spectral coefficients are stored in symmetric order: index `i` holds the
//! frequency `k = i - N/2`, `k` in `{-N/2, ..., N/2 - 1}`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Relative tolerance on the Hermitian defect accepted by the inverse transform.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Clone)]
pub struct SpectralGrid {
    half_length: f64,
    n_points: usize,
    dx: f64,
    points: Vec<f64>,
    frequencies: Vec<f64>,
    forward_plan: Arc<dyn Fft<f64>>,
    inverse_plan: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("half_length", &self.half_length)
            .field("n_points", &self.n_points)
            .field("dx", &self.dx)
            .finish()
    }
}

impl PartialEq for SpectralGrid {
    fn eq(&self, other: &Self) -> bool {
        self.half_length == other.half_length && self.n_points == other.n_points
    }
}

impl SpectralGrid {
    pub fn new(half_length: f64, n_points: usize) -> Result<Self> {
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half length must be positive and finite, got {half_length}"
            )));
        }
        if n_points < 8 || !n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "number of points must be even and at least 8, got {n_points}"
            )));
        }
        let dx = 2.0 * half_length / n_points as f64;
        let points = (0..n_points).map(|j| -half_length + j as f64 * dx).collect();
        let half = (n_points / 2) as i64;
        let frequencies = (-half..half).map(|k| PI * k as f64 / half_length).collect();
        let mut planner = FftPlanner::new();
        Ok(Self {
            half_length,
            n_points,
            dx,
            points,
            frequencies,
            forward_plan: planner.plan_fft_forward(n_points),
            inverse_plan: planner.plan_fft_inverse(n_points),
        })
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Frequency spacing `pi / L`.
    pub fn dp(&self) -> f64 {
        PI / self.half_length
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    /// Integer wavenumber `k` stored at spectral index `i`.
    pub fn wavenumber(&self, index: usize) -> i64 {
        index as i64 - (self.n_points / 2) as i64
    }

    /// Spectral index of `-k` for the coefficient at `index`, if it is on the grid.
    pub fn mirror_index(&self, index: usize) -> Option<usize> {
        let half = self.n_points / 2;
        if index == 0 {
            None
        } else {
            Some(2 * half - index)
        }
    }

    /// Largest frequency magnitude on the grid, `p_max = pi N / (2L)`.
    pub fn max_frequency(&self) -> f64 {
        PI * (self.n_points / 2) as f64 / self.half_length
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> FieldPhysical {
        FieldPhysical::new(self.points.iter().map(|&x| f(x)).collect())
    }

    pub fn sample_spectrum(&self, f: impl Fn(f64) -> Complex) -> FieldSpectral {
        FieldSpectral::new(self.frequencies.iter().map(|&p| f(p)).collect())
    }

    fn check_physical(&self, f: &FieldPhysical) -> Result<()> {
        if f.len() != self.n_points {
            return Err(Error::LengthMismatch {
                expected: self.n_points,
                got: f.len(),
            });
        }
        Ok(())
    }

    fn check_spectral(&self, f: &FieldSpectral) -> Result<()> {
        if f.len() != self.n_points {
            return Err(Error::LengthMismatch {
                expected: self.n_points,
                got: f.len(),
            });
        }
        Ok(())
    }

    /// `coeff(k) = dx / sqrt(2 pi) * sum_j f(x_j) exp(-i p_k x_j)`.
    pub fn fourier_forward(&self, f: &FieldPhysical) -> Result<FieldSpectral> {
        self.check_physical(f)?;
        let n = self.n_points;
        let half = n / 2;
        let mut buffer: Vec<Complex> = f.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.forward_plan.process(&mut buffer);
        let scale = self.dx / (2.0 * PI).sqrt();
        // p_k x_j = -pi k + 2 pi k j / N, so the DFT picks up (-1)^k.
        let coeffs = (0..n)
            .map(|i| {
                let k = i as i64 - half as i64;
                let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                buffer[k.rem_euclid(n as i64) as usize] * (scale * sign)
            })
            .collect();
        Ok(FieldSpectral { coeffs })
    }

    /// `f(x_j) = dp / sqrt(2 pi) * sum_k coeff(k) exp(i p_k x_j)`, real part.
    ///
    /// Fails when the coefficients are not the transform of a real field.
    pub fn fourier_inverse(&self, spectrum: &FieldSpectral) -> Result<FieldPhysical> {
        self.check_spectral(spectrum)?;
        let scale = spectrum.max_abs();
        let defect = self.hermitian_defect(spectrum);
        if defect > HERMITIAN_TOLERANCE * scale {
            return Err(Error::NotHermitian {
                defect,
                tolerance: HERMITIAN_TOLERANCE * scale,
            });
        }
        Ok(self.inverse_unchecked(spectrum))
    }

    fn inverse_unchecked(&self, spectrum: &FieldSpectral) -> FieldPhysical {
        let n = self.n_points;
        let half = n / 2;
        let mut buffer = vec![Complex::new(0.0, 0.0); n];
        for (i, c) in spectrum.coeffs.iter().enumerate() {
            let k = i as i64 - half as i64;
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            buffer[k.rem_euclid(n as i64) as usize] = c * sign;
        }
        self.inverse_plan.process(&mut buffer);
        let scale = self.dp() / (2.0 * PI).sqrt();
        FieldPhysical::new(buffer.iter().map(|c| c.re * scale).collect())
    }

    /// Inverse transform of `-p_k^2 coeff(k)`.
    pub fn spectral_second_derivative(&self, f: &FieldPhysical) -> Result<FieldPhysical> {
        let spectrum = self.fourier_forward(f)?;
        Ok(self.inverse_unchecked(&self.second_derivative_spectrum(&spectrum)))
    }

    pub fn second_derivative_spectrum(&self, spectrum: &FieldSpectral) -> FieldSpectral {
        FieldSpectral::new(
            spectrum
                .coeffs
                .iter()
                .zip(&self.frequencies)
                .map(|(c, p)| c * (-p * p))
                .collect(),
        )
    }

    /// Largest of `|c(-k) - conj c(k)|` over paired modes and of the imaginary
    /// parts at `k = 0` and `k = -N/2`.
    pub fn hermitian_defect(&self, spectrum: &FieldSpectral) -> f64 {
        let half = self.n_points / 2;
        let c = &spectrum.coeffs;
        let mut defect = c[0].im.abs().max(c[half].im.abs());
        for i in 1..half {
            let mirror = 2 * half - i;
            defect = defect.max((c[mirror] - c[i].conj()).norm());
        }
        defect
    }

    /// Projects onto Hermitian-symmetric coefficients (the spectra of real fields).
    pub fn symmetrize(&self, spectrum: &mut FieldSpectral) {
        let half = self.n_points / 2;
        let c = &mut spectrum.coeffs;
        c[0].im = 0.0;
        c[half].im = 0.0;
        for i in 1..half {
            let mirror = 2 * half - i;
            let avg = (c[i] + c[mirror].conj()) * 0.5;
            c[i] = avg;
            c[mirror] = avg.conj();
        }
    }

    /// `dx * sum_j |f_j|`.
    pub fn l1(&self, f: &FieldPhysical) -> f64 {
        self.dx * f.values.iter().map(|v| v.abs()).sum::<f64>()
    }

    /// `dx * sum_j f_j^2`.
    pub fn l2_squared(&self, f: &FieldPhysical) -> f64 {
        self.dx * f.values.iter().map(|v| v * v).sum::<f64>()
    }

    /// `dp * sum_k |coeff(k)|^2`, the spectral side of Parseval.
    pub fn spectral_l2_squared(&self, f: &FieldSpectral) -> f64 {
        self.dp() * f.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }
}

/// Samples `u(x_j)` at a fixed time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldPhysical {
    pub values: Vec<f64>,
}

impl FieldPhysical {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self { values: vec![0.0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Coefficients approximating `u_hat(p_k)` in symmetric order.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpectral {
    pub coeffs: Vec<Complex>,
}

impl FieldSpectral {
    pub fn new(coeffs: Vec<Complex>) -> Self {
        Self { coeffs }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            coeffs: vec![Complex::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }
}

/// Boundary-decay requirement standing in for decay at infinity: samples in
/// the outer `band` fraction of `[-L, L)` must stay below `threshold` times
/// the maximum amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailCheck {
    pub threshold: f64,
    pub band: f64,
}

impl Default for TailCheck {
    fn default() -> Self {
        Self {
            threshold: 1e-10,
            band: 0.1,
        }
    }
}

impl TailCheck {
    pub fn with_threshold(threshold: f64) -> Self {
        Self {
            threshold,
            ..Self::default()
        }
    }

    /// Accepts everything; for fields that are genuinely periodic on the grid.
    pub fn disabled() -> Self {
        Self {
            threshold: f64::INFINITY,
            band: 0.0,
        }
    }

    /// Ratio of the largest sample in the outer band to the largest sample overall.
    pub fn tail_ratio(&self, grid: &SpectralGrid, f: &FieldPhysical) -> f64 {
        let peak = f.max_abs();
        if peak == 0.0 || self.band <= 0.0 {
            return 0.0;
        }
        let inner = (1.0 - self.band) * grid.half_length();
        let tail = grid
            .points()
            .iter()
            .zip(&f.values)
            .filter(|(x, _)| x.abs() >= inner)
            .fold(0.0_f64, |m, (_, v)| m.max(v.abs()));
        tail / peak
    }

    pub fn check(&self, grid: &SpectralGrid, f: &FieldPhysical, what: &str) -> Result<()> {
        let tail = self.tail_ratio(grid, f);
        if tail > self.threshold {
            return Err(Error::TailViolation {
                what: what.to_string(),
                tail,
                threshold: self.threshold,
            });
        }
        Ok(())
    }
}
