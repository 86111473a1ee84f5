//! Generalized Jacobi measures
//! `h(x) (1-x)^alpha (1+x)^beta prod_v |x - x_v|^lambda_v dx` on `[-1, 1]`
//! and their three-term recurrence coefficients.

mod composite;
mod gauss_jacobi;
mod stieltjes;

use std::fmt;
use std::sync::Arc;

pub use composite::{build_composite_rule, QuadratureRule};
pub use gauss_jacobi::gauss_jacobi;
pub use stieltjes::{stieltjes_from_rule, stieltjes_recurrence, ConvergenceInfo, RecurrenceTable, MAX_COEFFICIENTS};

use crate::chebyshev;
use crate::error::{bail, Result};
use crate::scalar::Real;

type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// The smooth positive factor `h`.
#[derive(Clone)]
pub struct AnalyticFactor<T> {
    label: String,
    evaluator: Evaluator<T>,
    log_chebyshev: Option<Vec<T>>,
}

impl<T: Real> AnalyticFactor<T> {
    /// `h = 1`.
    pub fn one() -> Self {
        Self { label: "one".into(), evaluator: Arc::new(|_| T::one()), log_chebyshev: Some(Vec::new()) }
    }

    /// `h = e^x`, i.e. `log h = T_1`.
    pub fn exp() -> Self {
        Self {
            label: "exp".into(),
            evaluator: Arc::new(|x: T| x.exp()),
            log_chebyshev: Some(vec![T::zero(), T::one()]),
        }
    }

    /// `h = exp(sum_j g_j T_j(x))`.
    pub fn from_log_chebyshev(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            bail!(InvalidMeasure, "log h coefficients must be finite");
        }
        let shared = coeffs.clone();
        Ok(Self {
            label: "chebyshev_log".into(),
            evaluator: Arc::new(move |x| chebyshev::t_series(&shared, x).exp()),
            log_chebyshev: Some(coeffs),
        })
    }

    /// Arbitrary positive `h`, known only through evaluation.
    pub fn from_fn(label: impl Into<String>, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self { label: label.into(), evaluator: Arc::new(f), log_chebyshev: None }
    }

    #[inline]
    pub fn eval(&self, x: T) -> T {
        (self.evaluator)(x)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn log_chebyshev_coeffs(&self) -> Option<&[T]> {
        self.log_chebyshev.as_deref()
    }

    /// True when `h` is identically one.
    pub fn is_one(&self) -> bool {
        self.log_chebyshev.as_ref().is_some_and(|c| c.iter().all(|&v| v == T::zero()))
    }
}

impl<T: fmt::Debug> fmt::Debug for AnalyticFactor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticFactor")
            .field("label", &self.label)
            .field("log_chebyshev", &self.log_chebyshev)
            .finish()
    }
}

/// An interior singularity `|x - position|^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPoint<T> {
    position: T,
    angle_rational: Option<(u32, u32)>,
    exponent: T,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `cos(pi p / q)` with the values at multiples of pi/6 and pi/4 exact or
/// correctly rounded.
fn cos_pi_rational<T: Real>(p: u32, q: u32) -> T {
    // reduce 12 p / q when it is an integer
    if (12 * p).is_multiple_of(q) {
        let r = (12 * p / q) % 24;
        let h = T::lit(0.5);
        let s3 = T::lit(3.0).sqrt() * h;
        let s2 = T::FRAC_1_SQRT_2();
        let table = |r: u32| -> Option<T> {
            Some(match r {
                0 => T::one(),
                2 => s3,
                3 => s2,
                4 => h,
                6 => T::zero(),
                8 => -h,
                9 => -s2,
                10 => -s3,
                12 => -T::one(),
                _ => return None,
            })
        };
        if let Some(v) = table(r) {
            return v;
        }
    }
    (T::PI() * T::lit(p as f64) / T::lit(q as f64)).cos()
}

impl<T: Real> SingularPoint<T> {
    /// Singularity at `cos(pi p / q)` with `gcd(p, q) = 1`, `0 < p < q`.
    pub fn from_angle(p: u32, q: u32, exponent: T) -> Result<Self> {
        if p == 0 || p >= q {
            bail!(InvalidMeasure, "need 0 < p < q for an interior point, got p={p}, q={q}");
        }
        if gcd(p, q) != 1 {
            bail!(InvalidMeasure, "p={p} and q={q} are not coprime");
        }
        Self::check_exponent(exponent)?;
        Ok(Self { position: cos_pi_rational(p, q), angle_rational: Some((p, q)), exponent })
    }

    /// Singularity at an arbitrary interior point.
    pub fn at(position: T, exponent: T) -> Result<Self> {
        if !(position > -T::one() && position < T::one()) {
            bail!(InvalidMeasure, "singularity must lie in (-1, 1), got {position}");
        }
        Self::check_exponent(exponent)?;
        Ok(Self { position, angle_rational: None, exponent })
    }

    fn check_exponent(exponent: T) -> Result<()> {
        if !(exponent > -T::one()) || !exponent.is_finite() {
            bail!(InvalidMeasure, "singular exponent must exceed -1, got {exponent}");
        }
        Ok(())
    }

    #[inline]
    pub fn position(&self) -> T {
        self.position
    }
    #[inline]
    pub fn exponent(&self) -> T {
        self.exponent
    }
    #[inline]
    pub fn angle_rational(&self) -> Option<(u32, u32)> {
        self.angle_rational
    }

    /// `arccos` of the position, exact in `pi` units when available.
    pub fn angle(&self) -> T {
        match self.angle_rational {
            Some((p, q)) => T::PI() * T::lit(p as f64) / T::lit(q as f64),
            None => self.position.acos(),
        }
    }
}

/// `h(x) (1-x)^alpha (1+x)^beta prod_v |x - x_v|^lambda_v` on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GeneralizedJacobiMeasure<T> {
    alpha: T,
    beta: T,
    singularities: Vec<SingularPoint<T>>,
    h: AnalyticFactor<T>,
}

impl<T: Real> GeneralizedJacobiMeasure<T> {
    pub fn new(alpha: T, beta: T, singularities: Vec<SingularPoint<T>>, h: AnalyticFactor<T>) -> Result<Self> {
        for (name, e) in [("alpha", alpha), ("beta", beta)] {
            if !(e > -T::one()) || !e.is_finite() {
                bail!(InvalidMeasure, "{name} must exceed -1, got {e}");
            }
        }
        for w in singularities.windows(2) {
            if !(w[0].position < w[1].position) {
                bail!(InvalidMeasure, "singularities must be strictly increasing");
            }
        }
        // positivity of h on a Chebyshev grid plus the endpoints
        let m = 257usize;
        for i in 0..=m + 1 {
            let x = match i {
                0 => -T::one(),
                i if i == m + 1 => T::one(),
                i => (T::PI() * (T::from_usize_lossy(i) - T::lit(0.5)) / T::from_usize_lossy(m)).cos(),
            };
            let v = h.eval(x);
            if !(v > T::zero()) || !v.is_finite() {
                bail!(InvalidMeasure, "h must be positive and finite on [-1, 1]; h({x}) = {v}");
            }
        }
        Ok(Self { alpha, beta, singularities, h })
    }

    /// `(1 - x^2)^{-1/2}`.
    pub fn chebyshev() -> Self {
        let e = -T::lit(0.5);
        Self::new(e, e, Vec::new(), AnalyticFactor::one()).expect("valid")
    }

    /// Lebesgue measure on `[-1, 1]`.
    pub fn legendre() -> Self {
        Self::new(T::zero(), T::zero(), Vec::new(), AnalyticFactor::one()).expect("valid")
    }

    /// `(1-x)^alpha (1+x)^beta`.
    pub fn jacobi(alpha: T, beta: T) -> Result<Self> {
        Self::new(alpha, beta, Vec::new(), AnalyticFactor::one())
    }

    /// `|x|^lambda`, singular at `x = cos(pi/2)`.
    pub fn abs_power(lambda: T) -> Result<Self> {
        Self::new(T::zero(), T::zero(), vec![SingularPoint::from_angle(1, 2, lambda)?], AnalyticFactor::one())
    }

    #[inline]
    pub fn alpha(&self) -> T {
        self.alpha
    }
    #[inline]
    pub fn beta(&self) -> T {
        self.beta
    }
    pub fn singularities(&self) -> &[SingularPoint<T>] {
        &self.singularities
    }
    pub fn h(&self) -> &AnalyticFactor<T> {
        &self.h
    }

    /// Singularity `x_nu`, counted from 1.
    pub fn singularity(&self, nu: usize) -> Result<&SingularPoint<T>> {
        if nu == 0 || nu > self.singularities.len() {
            bail!(Precondition, "singularity index {nu} outside 1..={}", self.singularities.len());
        }
        Ok(&self.singularities[nu - 1])
    }

    /// `alpha + beta + sum lambda_v`.
    pub fn total_exponent(&self) -> T {
        self.alpha + self.beta + self.singularities.iter().map(|s| s.exponent).sum::<T>()
    }

    /// The weight function `w(x)`.
    pub fn weight(&self, x: T) -> T {
        self.weight_excluding(x, None)
    }

    /// Weight with the factor of singularity `nu` removed.
    pub fn weight_without(&self, nu: usize, x: T) -> Result<T> {
        self.singularity(nu)?;
        Ok(self.weight_excluding(x, Some(nu - 1)))
    }

    fn weight_excluding(&self, x: T, skip: Option<usize>) -> T {
        let one = T::one();
        let mut w = self.h.eval(x) * (one - x).powf(self.alpha) * (one + x).powf(self.beta);
        for (i, s) in self.singularities.iter().enumerate() {
            if Some(i) != skip {
                w = w * (x - s.position).abs().powf(s.exponent);
            }
        }
        w
    }

    /// True when the measure is invariant under `x -> -x` as far as can be
    /// decided without sampling `h`.
    pub fn is_symmetric(&self) -> bool {
        let h_even = match self.h.log_chebyshev_coeffs() {
            Some(c) => c.iter().skip(1).step_by(2).all(|&v| v == T::zero()),
            None => false,
        };
        let n = self.singularities.len();
        h_even
            && self.alpha == self.beta
            && (0..n).all(|i| {
                let (l, r) = (&self.singularities[i], &self.singularities[n - 1 - i]);
                l.position == -r.position && l.exponent == r.exponent
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_positions_are_exact() {
        let s = SingularPoint::<f64>::from_angle(1, 2, 1.0).unwrap();
        assert_eq!(s.position(), 0.0);
        assert_eq!(SingularPoint::<f64>::from_angle(1, 3, 1.0).unwrap().position(), 0.5);
        assert_eq!(SingularPoint::<f64>::from_angle(2, 3, 1.0).unwrap().position(), -0.5);
        let p = SingularPoint::<f64>::from_angle(2, 5, 1.0).unwrap().position();
        assert!((p - (0.4 * std::f64::consts::PI).cos()).abs() < 1e-16);
        assert!(SingularPoint::<f64>::from_angle(2, 4, 1.0).is_err());
        assert!(SingularPoint::<f64>::from_angle(3, 2, 1.0).is_err());
    }

    #[test]
    fn validation() {
        let one = AnalyticFactor::<f64>::one;
        assert!(GeneralizedJacobiMeasure::new(-1.0, 0.0, vec![], one()).is_err());
        let s = |x| SingularPoint::at(x, 0.5).unwrap();
        assert!(GeneralizedJacobiMeasure::new(0.0, 0.0, vec![s(0.2), s(0.1)], one()).is_err());
        assert!(GeneralizedJacobiMeasure::new(0.0, 0.0, vec![s(0.2), s(0.2)], one()).is_err());
        let neg = AnalyticFactor::from_fn("neg", |x: f64| x);
        assert!(GeneralizedJacobiMeasure::new(0.0, 0.0, vec![], neg).is_err());
        assert!(SingularPoint::at(1.0_f64, 0.0).is_err());
        assert!(SingularPoint::at(0.0_f64, -1.0).is_err());
    }

    #[test]
    fn weight_and_symmetry() {
        let m = GeneralizedJacobiMeasure::<f64>::abs_power(1.0).unwrap();
        assert_eq!(m.weight(-0.25), 0.25);
        assert!(m.is_symmetric());
        assert_eq!(m.weight_without(1, -0.25).unwrap(), 1.0);
        let e = GeneralizedJacobiMeasure::new(0.0, 0.0, vec![], AnalyticFactor::<f64>::exp()).unwrap();
        assert!(!e.is_symmetric());
        assert!((e.weight(0.5) - 0.5f64.exp()).abs() < 1e-15);
    }
}
