//! Certified pseudospectral solver for the doubly nonlocal reaction-diffusion
//! equation with transport
//!
//! ```text
//! du/dt = J * u + b du/dx + a u + G * F(u, .)
//! ```
//!
//! posed on the real line and truncated to a periodic interval `[-L, L)`.
//! The solution is constructed as the fixed point of the Duhamel map
//! `v -> tau(v)` in Fourier space; [`fixedpoint`] computes the a priori
//! contraction constant of that map and checks it against the rate the
//! Picard iteration actually achieves.
//!
//! Module map:
//!
//! - [`grid`]: the truncated line, the unitary Fourier convention, spectral derivatives
//! - [`kernels`]: the kernels `J`, `G`, the sign condition on the symbol of `J`, and `nu`
//! - [`nonlinearity`]: the production rule `F(u, x)` with growth and Lipschitz constants
//! - [`propagation`]: exact linear propagator and the Duhamel map
//! - [`norms`]: discrete `L2`, `H2` and `W^{(1,2),2}` norms
//! - [`fixedpoint`]: certificates, Picard iteration, windowed global solve
//! - [`config`], [`io`], [`report`]: batch configuration and serialization

// `!(x > 0.0)` is used deliberately so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod fixedpoint;
pub mod grid;
pub mod io;
pub mod kernels;
pub mod nonlinearity;
pub mod norms;
pub mod propagation;
pub mod report;

pub use error::{Error, Result};
pub use fixedpoint::{
    compute_certificate, contraction_constant, global_iterate, global_solve, max_horizon,
    nontriviality_check, picard_iterate, picard_solve, Certificate, InitialGuess, PicardOptions,
    PicardReport,
};
pub use grid::{FieldPhysical, FieldSpectral, SpectralGrid, TailCheck};
pub use kernels::{compute_nu, validate_kernels, Kernel, KernelPair, KernelSpec, ValidationReport};
pub use nonlinearity::{estimate_constants, Nonlinearity, NonlinearityKind};
pub use norms::{h2_norm, l2_slice, w122_distance, w122_norm, NormReport};
pub use propagation::{
    apply_tau, build_propagator, free_evolution, DuhamelMap, ModelParams, PropagatorTable, Trajectory,
};

pub type Complex = num_complex::Complex64;
