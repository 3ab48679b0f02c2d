//! Discrete `L2`, `H2` and `W^{(1,2),2}` norms.
//!
//! Space integrals use the rectangle rule (equivalently Parseval on the
//! spectral side); time integrals of squared slice norms use the
//! trapezoidal rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldPhysical, FieldSpectral, SpectralGrid, TailCheck};
use crate::propagation::Trajectory;

pub fn l2_slice(grid: &SpectralGrid, f: &FieldPhysical) -> f64 {
    grid.l2_squared(f).sqrt()
}

/// `||f''||_2^2` from the spectrum, `dp * sum_k p_k^4 |c_k|^2`.
fn d2x_squared(grid: &SpectralGrid, spectrum: &FieldSpectral) -> f64 {
    grid.dp()
        * spectrum
            .coeffs
            .iter()
            .zip(grid.frequencies())
            .map(|(c, p)| p.powi(4) * c.norm_sqr())
            .sum::<f64>()
}

/// `sqrt(||f||^2 + ||f''||^2)` with `f''` spectral.
pub fn h2_norm(grid: &SpectralGrid, f: &FieldPhysical, tail: &TailCheck) -> Result<f64> {
    tail.check(grid, f, "field")?;
    let spectrum = grid.fourier_forward(f)?;
    Ok((grid.l2_squared(f) + d2x_squared(grid, &spectrum)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub l2_spacetime: f64,
    pub d2x_l2_spacetime: f64,
    pub dt_l2_spacetime: f64,
    pub w122: f64,
}

fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
        .sum()
}

/// Space-time norms of `u`, `u_xx` and `u_t` over the trajectory's time nodes.
pub fn w122_norm(grid: &SpectralGrid, traj: &Trajectory) -> Result<NormReport> {
    let n = traj.len();
    if traj.dudt_slices.len() != n {
        return Err(Error::MissingDerivative);
    }
    if traj.spectral_slices.len() != n || traj.times.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: traj.spectral_slices.len().min(traj.times.len()),
        });
    }
    let u2: Vec<f64> = traj.slices.iter().map(|s| grid.l2_squared(s)).collect();
    let uxx2: Vec<f64> = traj
        .spectral_slices
        .iter()
        .map(|s| d2x_squared(grid, s))
        .collect();
    let ut2: Vec<f64> = traj.dudt_slices.iter().map(|s| grid.l2_squared(s)).collect();
    let l2 = trapezoid(&traj.times, &u2);
    let d2x = trapezoid(&traj.times, &uxx2);
    let dt = trapezoid(&traj.times, &ut2);
    Ok(NormReport {
        l2_spacetime: l2.sqrt(),
        d2x_l2_spacetime: d2x.sqrt(),
        dt_l2_spacetime: dt.sqrt(),
        w122: (l2 + d2x + dt).sqrt(),
    })
}

/// `||a - b||_W` for trajectories on the same time nodes.
pub fn w122_distance(grid: &SpectralGrid, a: &Trajectory, b: &Trajectory) -> Result<f64> {
    Ok(w122_norm(grid, &a.sub(b)?)?.w122)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagation::ModelParams;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    const GAUSSIAN_L2: f64 = 1.331_335_363_800_389_7;
    const GAUSSIAN_H2: f64 = 1.761_191_142_120_767_4;

    #[test]
    fn slice_norms() {
        let grid = SpectralGrid::new(20.0, 512).unwrap();
        assert_eq!(l2_slice(&grid, &FieldPhysical::zeros(512)), 0.0);
        assert!((l2_slice(&grid, &grid.sample(|_| 1.0)) - 40f64.sqrt()).abs() < 1e-13);
        let g = grid.sample(|x| (-x * x / 2.0).exp());
        assert!((l2_slice(&grid, &g) - GAUSSIAN_L2).abs() < 1e-13);
        assert!((h2_norm(&grid, &g, &TailCheck::default()).unwrap() - GAUSSIAN_H2).abs() < 1e-12);
    }

    #[test]
    fn h2_of_harmonic_and_tail_refusal() {
        let l = 20.0;
        let grid = SpectralGrid::new(l, 256).unwrap();
        let f = grid.sample(|x| (PI * x / l).cos());
        assert!(h2_norm(&grid, &f, &TailCheck::default()).is_err());
        let h2 = h2_norm(&grid, &f, &TailCheck::disabled()).unwrap();
        let expected = l2_slice(&grid, &f) * (1.0 + (PI / l).powi(4)).sqrt();
        assert!((h2 - expected).abs() < 1e-12 * expected);
        assert_eq!(
            h2_norm(&grid, &FieldPhysical::zeros(256), &TailCheck::default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn static_and_zero_trajectories() {
        let grid = SpectralGrid::new(20.0, 256).unwrap();
        let params = ModelParams::new(0.0, 0.0, 2.5, 10).unwrap();
        let zero = w122_norm(&grid, &Trajectory::zeros(&grid, &params)).unwrap();
        assert_eq!(zero.w122, 0.0);

        let f = grid.sample(|x| (-x * x / 2.0).exp());
        let traj = Trajectory::from_physical(
            &grid,
            params.times(),
            vec![f.clone(); 11],
            vec![FieldPhysical::zeros(256); 11],
        )
        .unwrap();
        let r = w122_norm(&grid, &traj).unwrap();
        assert!((r.l2_spacetime - 2.5f64.sqrt() * l2_slice(&grid, &f)).abs() < 1e-12);
        assert_eq!(r.dt_l2_spacetime, 0.0);
        let sum = r.l2_spacetime.powi(2) + r.d2x_l2_spacetime.powi(2) + r.dt_l2_spacetime.powi(2);
        assert!((r.w122.powi(2) - sum).abs() <= 1e-12 * sum);
    }

    #[test]
    fn missing_derivative_is_an_error() {
        let grid = SpectralGrid::new(20.0, 64).unwrap();
        let params = ModelParams::new(0.0, 0.0, 1.0, 4).unwrap();
        let mut traj = Trajectory::zeros(&grid, &params);
        traj.dudt_slices.clear();
        assert!(matches!(w122_norm(&grid, &traj), Err(Error::MissingDerivative)));
    }

    fn random_trajectory(grid: &SpectralGrid, params: &ModelParams, coeffs: &[f64]) -> Trajectory {
        let times = params.times();
        let slices = times
            .iter()
            .map(|&t| grid.sample(|x| (coeffs[0] + coeffs[1] * t) * (-(x - coeffs[2]).powi(2)).exp()))
            .collect();
        let dudt = times
            .iter()
            .map(|_| grid.sample(|x| coeffs[1] * (-(x - coeffs[2]).powi(2)).exp()))
            .collect();
        Trajectory::from_physical(grid, times, slices, dudt).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn w_norm_axioms(
            a in prop::collection::vec(-2.0f64..2.0, 3),
            b in prop::collection::vec(-2.0f64..2.0, 3),
            c in -3.0f64..3.0,
        ) {
            let grid = SpectralGrid::new(10.0, 64).unwrap();
            let params = ModelParams::new(0.0, 0.0, 1.0, 5).unwrap();
            let u = random_trajectory(&grid, &params, &a);
            let v = random_trajectory(&grid, &params, &b);
            let nu = w122_norm(&grid, &u).unwrap().w122;
            let nv = w122_norm(&grid, &v).unwrap().w122;
            let scaled = w122_norm(&grid, &u.scaled(c)).unwrap().w122;
            prop_assert!((scaled - c.abs() * nu).abs() <= 1e-12 * nu.max(1e-300));
            let sum = u.sub(&v.scaled(-1.0)).unwrap();
            let ns = w122_norm(&grid, &sum).unwrap().w122;
            prop_assert!(ns <= (nu + nv) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn parseval_consistency_of_slice_norm() {
        let grid = SpectralGrid::new(20.0, 256).unwrap();
        let f = grid.sample(|x| x.sin() * (-x * x / 8.0).exp());
        let spec = grid.fourier_forward(&f).unwrap();
        let phys = grid.l2_squared(&f);
        assert!((phys - grid.spectral_l2_squared(&spec)).abs() <= 1e-10 * phys);
    }

    #[test]
    fn extra_slice_never_decreases_norm() {
        let grid = SpectralGrid::new(10.0, 64).unwrap();
        let short = ModelParams::new(0.0, 0.0, 1.0, 4).unwrap();
        let long = ModelParams::new(0.0, 0.0, 1.25, 5).unwrap();
        let a = w122_norm(&grid, &random_trajectory(&grid, &short, &[1.0, 0.5, 0.0])).unwrap();
        let b = w122_norm(&grid, &random_trajectory(&grid, &long, &[1.0, 0.5, 0.0])).unwrap();
        assert!(b.l2_spacetime >= a.l2_spacetime);
        assert!(b.w122 >= a.w122);
    }
}
