//! Special functions: gamma and Bessel functions of the first kind.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, bessel_j_entire, bessel_j_prime, BesselOrder};
pub use gamma::{gamma, ln_gamma};
