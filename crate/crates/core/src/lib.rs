//! Orthogonal polynomials for generalized Jacobi weights
//!
//! `w(x) = h(x) (1-x)^alpha (1+x)^beta prod |x - x_v|^lambda_v` on `[-1, 1]`,
//! with tools to study how their zeros are spaced next to an interior
//! algebraic singularity `x_v`, and the zeros `j_k(a, c, d)` of
//! `c J_a(x) + d J_{a+1}(x)` that govern the limiting spacing.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`);
//! the aliases at the crate root fix the scalar to `f64`.

// `!(x > y)` comparisons are deliberate: they reject NaN along with the bad range
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod bessel_zeros;
pub mod chebyshev;
pub mod error;
pub mod jacobi_spectra;
pub mod measure;
pub mod scalar;
pub mod specfun;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Measure = measure::GeneralizedJacobiMeasure<f64>;
pub type Singularity = measure::SingularPoint<f64>;
pub type Analytic = measure::AnalyticFactor<f64>;
pub type Recurrence = measure::RecurrenceTable<f64>;
pub type Quadrature = measure::QuadratureRule<f64>;
pub type Jacobi = jacobi_spectra::JacobiMatrix<f64>;
pub type ZeroSet = jacobi_spectra::CenteredZeroSet<f64>;
pub type ScaledZeros = jacobi_spectra::ScaledZeroFrame<f64>;
pub type Combo = bessel_zeros::ComboSpec<f64>;
pub type Potential = bessel_zeros::PotentialCoeffs<f64>;
pub type Phase = asymptotics::PhaseContext<f64>;
pub type Order = specfun::BesselOrder<f64>;
