//! Zeros `j_k(a, c, d)` of `psi(x) = c J_a(x) + d J_{a+1}(x)`, written in the
//! entire form `c G_a(x) + d x G_{a+1}(x)` so negative `x` makes sense.
//!
//! Indexing: `... < j_{-2} < j_{-1} <= 0 < j_1 < j_2 < ...`, with `j_0 = 0`
//! by convention. When `c = 0` the origin itself is a zero and is reported
//! as `j_{-1} = 0`.

mod coeffs;

pub use coeffs::PotentialCoeffs;

use crate::error::{bail, Error, Result};
use crate::scalar::Real;
use crate::specfun::bessel_j_entire;

/// Parameters `(a, c, d)`, stored with `c^2 + d^2 = 1` and the first
/// nonzero of `(c, d)` nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComboSpec<T> {
    a: T,
    c: T,
    d: T,
}

impl<T: Real> ComboSpec<T> {
    pub fn new(a: T, c: T, d: T) -> Result<Self> {
        if !(a > -T::one()) || !a.is_finite() {
            bail!(Domain, "order must satisfy a > -1, got {a}");
        }
        if !c.is_finite() || !d.is_finite() {
            bail!(Domain, "combination coefficients must be finite");
        }
        let norm = c.hypot(d);
        if norm == T::zero() {
            bail!(Domain, "(c, d) must not both vanish");
        }
        let (mut c, mut d) = (c / norm, d / norm);
        if c < T::zero() || (c == T::zero() && d < T::zero()) {
            c = -c;
            d = -d;
        }
        // keep an exact zero exact, and never store -0
        if c == T::zero() {
            c = T::zero();
        }
        if d == T::zero() {
            d = T::zero();
        }
        Ok(Self { a, c, d })
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }
    #[inline]
    pub fn c(&self) -> T {
        self.c
    }
    #[inline]
    pub fn d(&self) -> T {
        self.d
    }

    /// Same order and `c`, with `d` negated: the mirror image `x -> -x`.
    pub fn with_negated_d(&self) -> Self {
        Self::new(self.a, self.c, -self.d).expect("mirror of a valid spec is valid")
    }

    /// True iff `psi(0) = 0`, i.e. `c = 0`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.c == T::zero()
    }

    /// Sign of `psi` just to the right of the origin.
    fn sign_at_origin(&self) -> T {
        if self.c != T::zero() {
            self.c.signum()
        } else {
            self.d.signum()
        }
    }
}

/// Index of a zero; never 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZeroIndex(i64);

impl ZeroIndex {
    pub fn new(k: i64) -> Result<Self> {
        if k == 0 {
            bail!(Precondition, "zero index must be nonzero (j_0 = 0 is a convention)");
        }
        Ok(Self(k))
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }
}

impl TryFrom<i64> for ZeroIndex {
    type Error = Error;
    fn try_from(k: i64) -> Result<Self> {
        Self::new(k)
    }
}

/// `c G_a(x) + d x G_{a+1}(x)`, defined for every real `x`.
pub fn psi_eval<T: Real>(spec: &ComboSpec<T>, x: T) -> Result<T> {
    let mut v = T::zero();
    if spec.c != T::zero() {
        v = spec.c * bessel_j_entire(spec.a, x)?;
    }
    if spec.d != T::zero() {
        v = v + spec.d * x * bessel_j_entire(spec.a + T::one(), x)?;
    }
    Ok(v)
}

const FINE_STEP: f64 = 0.01;
const FINE_LIMIT: usize = 200;
/// Scanning beyond this point means the zero count is inconsistent.
const SCAN_CEILING: f64 = 1e6;

/// Scan grid: step 0.01 up to x = 2, then pi/8.
fn grid_point<T: Real>(i: usize) -> T {
    if i <= FINE_LIMIT {
        T::lit(FINE_STEP) * T::from_usize_lossy(i)
    } else {
        T::lit(FINE_STEP * FINE_LIMIT as f64) + T::FRAC_PI_8() * T::from_usize_lossy(i - FINE_LIMIT)
    }
}

/// Bisection on a bracket known to hold one sign change, then one secant step.
fn refine<T: Real>(spec: &ComboSpec<T>, mut lo: T, mut hi: T, mut f_lo: T, mut f_hi: T, s_lo: T) -> Result<T> {
    let width = T::tol(1e-13).max(T::lit(4.0) * T::epsilon() * hi.abs());
    for _ in 0..400 {
        if hi - lo <= width {
            break;
        }
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = psi_eval(spec, mid)?;
        if f == T::zero() {
            return Ok(mid);
        }
        if f.signum() == s_lo {
            lo = mid;
            f_lo = f;
        } else {
            hi = mid;
            f_hi = f;
        }
    }
    if hi - lo > width * T::lit(2.0) {
        bail!(IterationFailure, "bisection stalled on [{lo}, {hi}]");
    }
    let denom = f_hi - f_lo;
    if denom != T::zero() {
        let x = lo - f_lo * (hi - lo) / denom;
        if x.is_finite() && x >= lo && x <= hi {
            return Ok(x);
        }
    }
    Ok(lo + (hi - lo) / T::lit(2.0))
}

/// The first `count` positive zeros, in increasing order.
fn positive_zeros<T: Real>(spec: &ComboSpec<T>, count: usize) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(count);
    let mut x_lo = T::zero();
    let mut f_lo = psi_eval(spec, x_lo)?;
    let mut s_lo = spec.sign_at_origin();
    let ceiling = T::lit(SCAN_CEILING);
    let mut i = 0usize;
    while out.len() < count {
        i += 1;
        let x_hi: T = grid_point(i);
        if x_hi > ceiling {
            bail!(IterationFailure, "no zero #{} below {}", out.len() + 1, SCAN_CEILING);
        }
        let f_hi = psi_eval(spec, x_hi)?;
        if f_hi == T::zero() {
            out.push(x_hi);
            s_lo = -s_lo;
            x_lo = x_hi;
            f_lo = f_hi;
            continue;
        }
        let s_hi = f_hi.signum();
        if s_hi != s_lo {
            out.push(refine(spec, x_lo, x_hi, f_lo, f_hi, s_lo)?);
        }
        x_lo = x_hi;
        f_lo = f_hi;
        s_lo = s_hi;
    }
    Ok(out)
}

/// `j_k(a, c, d)`. Negative indices use `j_{-k}(a,c,d) = -j_k(a,c,-d)`.
pub fn combo_zero<T: Real>(spec: &ComboSpec<T>, k: ZeroIndex) -> Result<T> {
    let k = k.get();
    let m = k.unsigned_abs() as usize;
    if k > 0 {
        return Ok(positive_zeros(spec, m)?[m - 1]);
    }
    if spec.vanishes_at_origin() {
        if m == 1 {
            return Ok(T::zero());
        }
        return Ok(-positive_zeros(&spec.with_negated_d(), m - 1)?[m - 2]);
    }
    Ok(-positive_zeros(&spec.with_negated_d(), m)?[m - 1])
}

/// `j_1, ..., j_{k_max}`.
pub fn combo_zeros_range<T: Real>(spec: &ComboSpec<T>, k_max: usize) -> Result<Vec<T>> {
    if k_max == 0 {
        bail!(Precondition, "k_max must be at least 1");
    }
    positive_zeros(spec, k_max)
}

/// `j_{-1}, ..., j_{-k_max}` (decreasing).
pub fn combo_zeros_negative<T: Real>(spec: &ComboSpec<T>, k_max: usize) -> Result<Vec<T>> {
    if k_max == 0 {
        bail!(Precondition, "k_max must be at least 1");
    }
    let mirror = spec.with_negated_d();
    if spec.vanishes_at_origin() {
        let mut out = vec![T::zero()];
        if k_max > 1 {
            out.extend(positive_zeros(&mirror, k_max - 1)?.into_iter().map(|x| -x));
        }
        return Ok(out);
    }
    Ok(positive_zeros(&mirror, k_max)?.into_iter().map(|x| -x).collect())
}

/// `sigma = (2a+1) c d / (c^2 + d^2)`.
pub fn sigma<T: Real>(spec: &ComboSpec<T>) -> T {
    (T::lit(2.0) * spec.a + T::one()) * spec.c * spec.d / (spec.c * spec.c + spec.d * spec.d)
}

/// Second differences of three consecutive positive zeros.
///
/// Returns `(delta2, delta2_inverse)` where
/// `delta2 = 1/j_{k+2} + 1/j_k - 2/j_{k+1}` and
/// `delta2_inverse = j_{k+2} - 2 j_{k+1} + j_k`.
pub fn second_difference<T: Real>(jk: T, jk1: T, jk2: T) -> Result<(T, T)> {
    if !(T::zero() < jk && jk < jk1 && jk1 < jk2) {
        bail!(Precondition, "need 0 < j_k < j_k+1 < j_k+2, got ({jk}, {jk1}, {jk2})");
    }
    let two = T::lit(2.0);
    Ok((jk2.recip() + jk.recip() - two / jk1, jk2 - two * jk1 + jk))
}

/// Potential `C(x)` of the normal form `u'' + C(x) u = 0` of the equation satisfied by `psi`.
pub fn normal_form_potential<T: Real>(spec: &ComboSpec<T>, x: T) -> Result<T> {
    if !(x > T::zero()) {
        bail!(Domain, "normal-form potential needs x > 0, got {x}");
    }
    let k = PotentialCoeffs::new(spec.a, spec.c, spec.d);
    let q = k.pole_factor(x);
    if q.abs() <= T::lit(8.0) * T::epsilon() * (x.abs() + k.pole().abs()) {
        bail!(Pole, "C has a pole at x = {}", k.pole());
    }
    Ok(k.potential(x))
}
