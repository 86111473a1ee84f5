//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point type the algorithms are generic over (`f32`, `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Sum + 'static
{
    /// Converts an `f64` literal. Panics only if the value is unrepresentable,
    /// which never happens for the finite constants used in this crate.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    /// Converts a count or index.
    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("finite integer")
    }

    /// Rescales a tolerance tuned for `f64` to this type's precision,
    /// never going below the tolerance itself.
    #[inline]
    fn tol(v: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::lit(v * ratio.max(1.0))
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + Sum + 'static
{
}

/// Neumaier-compensated sum.
pub fn compensated_sum<T: Real>(values: impl IntoIterator<Item = T>) -> T {
    let (mut sum, mut comp) = (T::zero(), T::zero());
    for v in values {
        let t = sum + v;
        comp = comp + if sum.abs() >= v.abs() { (sum - t) + v } else { (v - t) + sum };
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_lost_bits() {
        let v = [1.0_f64, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(v), 2.0);
        assert_eq!(compensated_sum(std::iter::repeat_n(0.1_f64, 10)), 1.0);
    }
}
