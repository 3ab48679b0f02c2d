//! Production rules `F(u, x)` with a linear growth bound
//! `|F(u, x)| <= k |u| + h(x)` and a global Lipschitz constant `l` in `u`.
//!
//! Catalog rules store `k`, `l` and `h` analytically. [`estimate_constants`]
//! samples a rule on a lattice and only ever yields lower bounds on the true
//! constants; it is a cross-check, never a substitute for the stored values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{FieldPhysical, FieldSpectral, SpectralGrid};

#[derive(Debug, Clone, PartialEq)]
pub enum NonlinearityKind {
    /// `F = c u`
    Linear { c: f64 },
    /// `F = c clamp(u, -u_cap, u_cap)`
    SaturatingLinear { c: f64, u_cap: f64 },
    /// `F = c u + h(x)`
    AffineOffset { c: f64, h: FieldPhysical },
    /// Piecewise-linear interpolation of `(u, F)` nodes, constant beyond the
    /// end nodes, independent of `x`. Must vanish at `u = 0`.
    TabulatedPointwise { u: Vec<f64>, f: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Nonlinearity {
    pub kind: NonlinearityKind,
    pub lipschitz_l: f64,
    pub growth_k: f64,
    pub offset_h: FieldPhysical,
}

fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
    }
}

impl Nonlinearity {
    pub fn linear(grid: &SpectralGrid, c: f64) -> Result<Self> {
        finite("c", c)?;
        Ok(Self {
            kind: NonlinearityKind::Linear { c },
            lipschitz_l: c.abs(),
            growth_k: c.abs(),
            offset_h: FieldPhysical::zeros(grid.len()),
        })
    }

    pub fn saturating_linear(grid: &SpectralGrid, c: f64, u_cap: f64) -> Result<Self> {
        finite("c", c)?;
        if !(u_cap.is_finite() && u_cap > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "u_cap must be positive and finite, got {u_cap}"
            )));
        }
        Ok(Self {
            kind: NonlinearityKind::SaturatingLinear { c, u_cap },
            lipschitz_l: c.abs(),
            growth_k: c.abs(),
            offset_h: FieldPhysical::zeros(grid.len()),
        })
    }

    pub fn affine_offset(grid: &SpectralGrid, c: f64, h: FieldPhysical) -> Result<Self> {
        finite("c", c)?;
        if h.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: h.len(),
            });
        }
        h.check_finite()?;
        if let Some(j) = h.values.iter().position(|v| *v < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "offset h must be nonnegative, h[{j}] = {}",
                h.values[j]
            )));
        }
        Ok(Self {
            kind: NonlinearityKind::AffineOffset { c, h: h.clone() },
            lipschitz_l: c.abs(),
            growth_k: c.abs(),
            offset_h: h,
        })
    }

    pub fn tabulated_pointwise(grid: &SpectralGrid, u: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if u.len() != f.len() || u.len() < 2 {
            return Err(Error::InvalidParameter(
                "tabulated rule needs at least two (u, F) nodes".into(),
            ));
        }
        if u.iter().chain(&f).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "tabulated rule has non-finite nodes".into(),
            ));
        }
        if u.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "tabulated rule nodes must be strictly increasing in u".into(),
            ));
        }
        let f0 = interpolate(&u, &f, 0.0);
        if f0 != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tabulated rule must vanish at u = 0 (got {f0}); a constant offset is not square integrable"
            )));
        }
        let slopes: Vec<f64> = u
            .windows(2)
            .zip(f.windows(2))
            .map(|(du, df)| (df[1] - df[0]) / (du[1] - du[0]))
            .collect();
        let lipschitz_l = slopes.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
        // F(u)/u is monotone on each segment away from 0 and constant on the
        // segment through 0, so the sup is attained at a node or that slope.
        let mut growth_k = u
            .iter()
            .zip(&f)
            .filter(|(x, _)| **x != 0.0)
            .fold(0.0_f64, |m, (x, y)| m.max((y / x).abs()));
        if let Some(i) = u.windows(2).position(|w| w[0] <= 0.0 && 0.0 <= w[1]) {
            growth_k = growth_k.max(slopes[i].abs());
        }
        Ok(Self {
            kind: NonlinearityKind::TabulatedPointwise { u, f },
            lipschitz_l,
            growth_k,
            offset_h: FieldPhysical::zeros(grid.len()),
        })
    }

    /// `F(u, x_j)`.
    pub fn eval(&self, u: f64, j: usize) -> f64 {
        match &self.kind {
            NonlinearityKind::Linear { c } => c * u,
            NonlinearityKind::SaturatingLinear { c, u_cap } => c * u.clamp(-u_cap, *u_cap),
            NonlinearityKind::AffineOffset { c, h } => c * u + h.values[j],
            NonlinearityKind::TabulatedPointwise { u: nodes, f } => interpolate(nodes, f, u),
        }
    }

    pub fn apply(&self, u: &FieldPhysical) -> Result<FieldPhysical> {
        if u.len() != self.offset_h.len() {
            return Err(Error::LengthMismatch {
                expected: self.offset_h.len(),
                got: u.len(),
            });
        }
        u.check_finite()?;
        Ok(FieldPhysical::new(
            u.values
                .iter()
                .enumerate()
                .map(|(j, &v)| self.eval(v, j))
                .collect(),
        ))
    }

    /// Transform of `x -> F(0, x)`.
    pub fn f0_spectrum(&self, grid: &SpectralGrid) -> Result<FieldSpectral> {
        let f0 = FieldPhysical::new((0..grid.len()).map(|j| self.eval(0.0, j)).collect());
        grid.fourier_forward(&f0)
    }

    /// `F` does not depend on `u`.
    pub fn is_constant_in_u(&self) -> bool {
        self.lipschitz_l == 0.0
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            NonlinearityKind::Linear { .. } => "linear",
            NonlinearityKind::SaturatingLinear { .. } => "saturating_linear",
            NonlinearityKind::AffineOffset { .. } => "affine_offset",
            NonlinearityKind::TabulatedPointwise { .. } => "tabulated_pointwise",
        }
    }

    pub fn estimate_constants(
        &self,
        grid: &SpectralGrid,
        u_range: (f64, f64),
        n_samples: usize,
    ) -> Result<ConstantEstimate> {
        estimate_constants(
            grid,
            |u, j| self.eval(u, j),
            Some(&self.offset_h),
            u_range,
            n_samples,
        )
    }
}

fn interpolate(nodes: &[f64], values: &[f64], u: f64) -> f64 {
    let last = nodes.len() - 1;
    if u <= nodes[0] {
        return values[0];
    }
    if u >= nodes[last] {
        return values[last];
    }
    let i = nodes.partition_point(|x| *x <= u) - 1;
    let t = (u - nodes[i]) / (nodes[i + 1] - nodes[i]);
    values[i] + t * (values[i + 1] - values[i])
}

/// The symmetric validation lattice `[-10 max|u0|, 10 max|u0|]` with 101 values.
pub fn validation_range(u0: &FieldPhysical) -> ((f64, f64), usize) {
    let m = 10.0 * u0.max_abs().max(1e-8);
    ((-m, m), 101)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantEstimate {
    pub l_est: f64,
    pub k_est: f64,
    /// Lattice spacing in `u`.
    pub resolution: f64,
    /// Sampled estimates only bound the true constants from below.
    pub lower_bounds: bool,
}

/// Samples `rule(u, j)` on `n_samples` equispaced `u` values crossed with the
/// grid points and returns the largest observed difference quotient and
/// growth ratio `(|F| - h) / |u|`.
pub fn estimate_constants(
    grid: &SpectralGrid,
    rule: impl Fn(f64, usize) -> f64,
    offset: Option<&FieldPhysical>,
    u_range: (f64, f64),
    n_samples: usize,
) -> Result<ConstantEstimate> {
    let (lo, hi) = u_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!("invalid u range [{lo}, {hi}]")));
    }
    if n_samples < 100 {
        return Err(Error::InvalidParameter(format!(
            "need at least 100 samples, got {n_samples}"
        )));
    }
    let du = (hi - lo) / (n_samples - 1) as f64;
    let lattice: Vec<f64> = (0..n_samples).map(|i| lo + i as f64 * du).collect();
    let mut l_est = 0.0_f64;
    let mut k_est = 0.0_f64;
    for j in 0..grid.len() {
        let h = offset.map_or(0.0, |h| h.values[j]);
        let values: Vec<f64> = lattice.iter().map(|&u| rule(u, j)).collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "rule is not finite at u = {}, x = {}",
                lattice[i],
                grid.points()[j]
            )));
        }
        for i in 1..n_samples {
            l_est = l_est.max((values[i] - values[i - 1]).abs() / (lattice[i] - lattice[i - 1]));
        }
        for (u, f) in lattice.iter().zip(&values) {
            if u.abs() >= 1e-8 {
                k_est = k_est.max((f.abs() - h) / u.abs());
            }
        }
    }
    Ok(ConstantEstimate {
        l_est,
        k_est,
        resolution: du,
        lower_bounds: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid() -> SpectralGrid {
        SpectralGrid::new(10.0, 64).unwrap()
    }

    fn gaussian_h(grid: &SpectralGrid) -> FieldPhysical {
        grid.sample(|x| 0.3 * (-x * x / 2.0).exp())
    }

    #[test]
    fn apply_catalog_rules() {
        let grid = grid();
        let f = Nonlinearity::linear(&grid, 0.5).unwrap();
        let out = f.apply(&grid.sample(|_| 2.0)).unwrap();
        assert!(out.values.iter().all(|v| *v == 1.0));

        let zero = Nonlinearity::linear(&grid, 0.0).unwrap();
        assert!(zero.apply(&grid.sample(|x| x.sin())).unwrap().max_abs() == 0.0);

        let sat = Nonlinearity::saturating_linear(&grid, 1.0, 1.0).unwrap();
        assert_eq!(sat.eval(3.0, 0), 1.0);
        assert_eq!(sat.eval(0.4, 0), 0.4);
        assert_eq!(sat.eval(-3.0, 0), -1.0);
    }

    #[test]
    fn apply_rejects_non_finite_input() {
        let grid = grid();
        let f = Nonlinearity::linear(&grid, 1.0).unwrap();
        let mut u = FieldPhysical::zeros(64);
        u.values[5] = f64::NAN;
        assert!(matches!(f.apply(&u), Err(Error::NonFinite { index: 5 })));
    }

    #[test]
    fn apply_is_pointwise() {
        let grid = grid();
        let f = Nonlinearity::affine_offset(&grid, -0.7, gaussian_h(&grid)).unwrap();
        let u = grid.sample(|x| x.cos() * 2.0);
        let out = f.apply(&u).unwrap();
        for j in 0..grid.len() {
            assert_eq!(out.values[j], f.eval(u.values[j], j));
        }
    }

    #[test]
    fn estimates_for_catalog_rules() {
        let grid = grid();
        let lin = Nonlinearity::linear(&grid, 0.3).unwrap();
        let est = lin.estimate_constants(&grid, (-5.0, 5.0), 101).unwrap();
        assert!((est.l_est - 0.3).abs() < 1e-12);
        assert!((est.k_est - 0.3).abs() < 1e-12);
        assert!(est.lower_bounds);

        let sat = Nonlinearity::saturating_linear(&grid, 0.8, 1.0).unwrap();
        let est = sat.estimate_constants(&grid, (-5.0, 5.0), 101).unwrap();
        assert!((est.l_est - 0.8).abs() < 1e-12);

        let off = Nonlinearity::affine_offset(&grid, 0.0, gaussian_h(&grid)).unwrap();
        let est = off.estimate_constants(&grid, (-5.0, 5.0), 101).unwrap();
        assert_eq!(est.l_est, 0.0);
        assert_eq!(est.k_est, 0.0);
    }

    #[test]
    fn estimate_rejects_bad_input() {
        let grid = grid();
        assert!(estimate_constants(&grid, |u, _| u, None, (0.0, 1.0), 10).is_err());
        assert!(estimate_constants(&grid, |u, _| u, None, (1.0, 0.0), 200).is_err());
        assert!(estimate_constants(&grid, |u, _| 1.0 / u, None, (-1.0, 1.0), 101).is_err());
    }

    #[test]
    fn stored_constants_dominate_refined_estimates() {
        let grid = grid();
        let u0 = grid.sample(|x| (-x * x).exp());
        let ((lo, hi), n) = validation_range(&u0);
        let rules = vec![
            Nonlinearity::linear(&grid, -0.4).unwrap(),
            Nonlinearity::saturating_linear(&grid, 0.9, 0.5).unwrap(),
            Nonlinearity::affine_offset(&grid, 0.2, gaussian_h(&grid)).unwrap(),
            Nonlinearity::tabulated_pointwise(
                &grid,
                vec![-2.0, -1.0, 0.0, 1.0, 3.0],
                vec![-0.5, -0.6, 0.0, 0.4, 0.5],
            )
            .unwrap(),
        ];
        for rule in rules {
            let est = rule
                .estimate_constants(&grid, (lo, hi), 10 * (n - 1) + 1)
                .unwrap();
            assert!(est.l_est <= rule.lipschitz_l * (1.0 + 1e-12), "{}", rule.name());
            assert!(est.k_est <= rule.growth_k * (1.0 + 1e-12), "{}", rule.name());
        }
    }

    #[test]
    fn tabulated_rule_constants() {
        let grid = grid();
        let rule =
            Nonlinearity::tabulated_pointwise(&grid, vec![-1.0, 0.0, 2.0], vec![1.0, 0.0, 1.0]).unwrap();
        assert_eq!(rule.lipschitz_l, 1.0);
        assert_eq!(rule.growth_k, 1.0);
        assert_eq!(rule.eval(1.0, 0), 0.5);
        assert_eq!(rule.eval(10.0, 0), 1.0);
        assert!(Nonlinearity::tabulated_pointwise(&grid, vec![0.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(Nonlinearity::tabulated_pointwise(&grid, vec![1.0, 0.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn negative_offset_is_refused() {
        let grid = grid();
        let h = grid.sample(|x| -(-x * x).exp());
        assert!(Nonlinearity::affine_offset(&grid, 0.0, h).is_err());
    }

    #[test]
    fn f0_spectrum_cases() {
        let grid = SpectralGrid::new(20.0, 256).unwrap();
        let lin = Nonlinearity::linear(&grid, 0.5).unwrap();
        assert_eq!(lin.f0_spectrum(&grid).unwrap().max_abs(), 0.0);

        let h = grid.sample(|x| (-x * x / 2.0).exp());
        let off = Nonlinearity::affine_offset(&grid, 0.0, h.clone()).unwrap();
        let spec = off.f0_spectrum(&grid).unwrap();
        assert_eq!(spec, grid.fourier_forward(&h).unwrap());
        for (c, p) in spec.coeffs.iter().zip(grid.frequencies()) {
            assert!((c.re - (-p * p / 2.0).exp()).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn discrete_lipschitz_bound_in_l2(
            a in prop::collection::vec(-5.0f64..5.0, 64),
            b in prop::collection::vec(-5.0f64..5.0, 64),
            c in -2.0f64..2.0,
            cap in 0.1f64..3.0,
        ) {
            let grid = grid();
            let u1 = FieldPhysical::new(a);
            let u2 = FieldPhysical::new(b);
            for rule in [
                Nonlinearity::linear(&grid, c).unwrap(),
                Nonlinearity::saturating_linear(&grid, c, cap).unwrap(),
                Nonlinearity::affine_offset(&grid, c, gaussian_h(&grid)).unwrap(),
            ] {
                let lhs = grid.l2_squared(&rule.apply(&u1).unwrap().sub(&rule.apply(&u2).unwrap())).sqrt();
                let rhs = rule.lipschitz_l * grid.l2_squared(&u1.sub(&u2)).sqrt();
                prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-14);
            }
        }
    }
}
