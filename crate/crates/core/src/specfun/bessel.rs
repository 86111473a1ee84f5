//! Bessel function of the first kind for real order `a > -1`.
//!
//! Three regimes:
//! * power series when `x <= 2` or `x^2 <= 8(a+1)`;
//! * Hankel asymptotic expansion when `x >= max(25, a^2)`;
//! * Steed's continued-fraction method in between (negative orders go
//!   through the reflection `J_{-v} = cos(v pi) J_v - sin(v pi) Y_v`).

use super::gamma::{gamma, ln_gamma};
use crate::error::{bail, Result};
use crate::scalar::Real;

/// Order of a Bessel function, constrained to `a > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct BesselOrder<T>(T);

impl<T: Real> BesselOrder<T> {
    pub fn new(a: T) -> Result<Self> {
        if !(a > -T::one()) || !a.is_finite() {
            bail!(Domain, "Bessel order must satisfy a > -1, got {a}");
        }
        Ok(Self(a))
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    pub fn j(self, x: T) -> Result<T> {
        bessel_j(self.0, x)
    }

    pub fn entire(self, x: T) -> Result<T> {
        bessel_j_entire(self.0, x)
    }

    pub fn j_prime(self, x: T) -> Result<T> {
        bessel_j_prime(self.0, x)
    }
}

enum Regime {
    Series,
    Steed,
    Hankel,
}

fn regime<T: Real>(a: T, x: T) -> Regime {
    let two = T::lit(2.0);
    if x <= two || x * x <= T::lit(8.0) * (a + T::one()) {
        Regime::Series
    } else if x >= T::lit(25.0).max(a * a / T::lit(6.0)) {
        // largest Hankel term stays below e^3, so cancellation is mild
        Regime::Hankel
    } else {
        Regime::Steed
    }
}

/// `sum_k (-x^2/4)^k / (k! (a+1)_k)`, the even power series behind `G_a`.
fn series_sum<T: Real>(a: T, x2: T) -> T {
    let q = -x2 / T::lit(4.0);
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..2000usize {
        let kf = T::from_usize_lossy(k);
        term = term * q / (kf * (a + kf));
        sum = sum + term;
        if term.abs() <= eps * sum.abs() && kf * (a + kf) > q.abs() {
            break;
        }
    }
    sum
}

/// `1 / (2^a Γ(a+1))`, the value of `G_a` at the origin.
fn entire_at_zero<T: Real>(a: T) -> T {
    let g = gamma(a + T::one());
    let p = T::lit(2.0).powf(a);
    if g.is_finite() && p.is_finite() {
        (p * g).recip()
    } else {
        (-(a * T::LN_2()) - ln_gamma(a + T::one())).exp()
    }
}

/// `(x/2)^a / Γ(a+1)` for `x > 0`.
fn series_prefactor<T: Real>(a: T, x: T) -> T {
    let g = gamma(a + T::one());
    let p = (x / T::lit(2.0)).powf(a);
    if g.is_finite() && p.is_finite() && p > T::min_positive_value() {
        p / g
    } else {
        (a * (x / T::lit(2.0)).ln() - ln_gamma(a + T::one())).exp()
    }
}

/// Hankel expansion, valid for any real order once `x` is large.
/// `None` when the asymptotic series stalls before reaching full precision.
fn hankel<T: Real>(a: T, x: T) -> Option<T> {
    let mu = T::lit(4.0) * a * a;
    let eight_x = T::lit(8.0) * x;
    let eps = T::epsilon();
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut converged = false;
    for k in 1..400usize {
        let kf = T::from_usize_lossy(k);
        let odd = T::from_usize_lossy(2 * k - 1);
        let next = term * (mu - odd * odd) / (kf * eight_x);
        if odd * odd > mu && next.abs() > term.abs() {
            break;
        }
        term = next;
        match k % 4 {
            1 => q = q + term,
            2 => p = p - term,
            3 => q = q - term,
            _ => p = p + term,
        }
        if term.abs() <= eps * (p.abs() + q.abs()) || term == T::zero() {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    // cos(x - phi) expanded so large x never enters a subtraction
    let phi = (a / T::lit(2.0) + T::lit(0.25)) * T::PI();
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    Some((T::lit(2.0) / (T::PI() * x)).sqrt() * (p * cos_chi - q * sin_chi))
}

fn steed_any_order<T: Real>(a: T, x: T) -> Result<T> {
    if a >= T::zero() {
        Ok(steed_jy(a, x)?.0)
    } else {
        let nu = -a;
        let (j, y) = steed_jy(nu, x)?;
        let (s, c) = (nu * T::PI()).sin_cos();
        Ok(c * j - s * y)
    }
}

/// Steed's method: `(J_v(x), Y_v(x))` for `v >= 0`, `x >= 2`.
fn steed_jy<T: Real>(nu: T, x: T) -> Result<(T, T)> {
    let eps = T::epsilon();
    let fpmin = T::min_positive_value().sqrt();
    let big = fpmin.recip();
    let one = T::one();
    let two = T::lit(2.0);
    let max_iter = 100_000usize;

    let nl = (nu - x + T::lit(1.5)).floor().max(T::zero());
    let nl_count = nl.to_usize().unwrap_or(0);
    let xmu = nu - nl;
    let xi = x.recip();
    let xi2 = two * xi;
    let w = xi2 / T::PI();

    // CF1: J'_nu / J_nu
    let mut isign = one;
    let mut h = (nu * xi).max(fpmin);
    let mut b = xi2 * nu;
    let mut d = T::zero();
    let mut c = h;
    let mut converged = false;
    for _ in 0..max_iter {
        b = b + xi2;
        d = b - d;
        if d.abs() < fpmin {
            d = fpmin;
        }
        c = b - c.recip();
        if c.abs() < fpmin {
            c = fpmin;
        }
        d = d.recip();
        let del = c * d;
        h = del * h;
        if d < T::zero() {
            isign = -isign;
        }
        if (del - one).abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        bail!(IterationFailure, "Bessel CF1 did not converge at x = {x}");
    }

    // downward recurrence to order xmu
    let mut rjl = isign * fpmin;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl_count {
        let t = fact * rjl + rjpl;
        fact = fact - xi;
        rjpl = fact * t - rjl;
        rjl = t;
        if rjl.abs() > big {
            rjl = rjl * fpmin;
            rjpl = rjpl * fpmin;
            rjl1 = rjl1 * fpmin;
        }
    }
    if rjl == T::zero() {
        rjl = eps;
    }
    let f = rjpl / rjl;

    // CF2: p + iq = (J' + iY')/(J + iY)
    let mut a = T::lit(0.25) - xmu * xmu;
    let mut p = -T::lit(0.5) * xi;
    let mut q = one;
    let br = two * x;
    let mut bi = two;
    let mut fct = a * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    converged = false;
    for i in 2..max_iter {
        a = a + T::from_usize_lossy(2 * (i - 1));
        bi = bi + two;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < fpmin {
            dr = fpmin;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < fpmin {
            cr = fpmin;
        }
        den = dr * dr + di * di;
        dr = dr / den;
        di = -di / den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - one).abs() + dli.abs() < eps {
            converged = true;
            break;
        }
    }
    if !converged {
        bail!(IterationFailure, "Bessel CF2 did not converge at x = {x}");
    }
    let gam = (p - f) / q;
    let mut rjmu = (w / ((p - f) * gam + q)).sqrt();
    if rjl < T::zero() {
        rjmu = -rjmu;
    }
    let rymu0 = rjmu * gam;
    let rymup = rymu0 * (p + q / gam);
    let mut ry1 = xmu * xi * rymu0 - rymup;
    let mut rymu = rymu0;
    let j = rjl1 * (rjmu / rjl);
    for i in 1..=nl_count {
        let t = (xmu + T::from_usize_lossy(i)) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = t;
    }
    Ok((j, rymu))
}

fn check_order<T: Real>(a: T) -> Result<()> {
    BesselOrder::new(a).map(|_| ())
}

/// `J_a(x)` for `a > -1`, `x >= 0`.
pub fn bessel_j<T: Real>(a: T, x: T) -> Result<T> {
    check_order(a)?;
    if !(x >= T::zero()) || !x.is_finite() {
        bail!(Domain, "bessel_j needs a finite x >= 0, got {x}");
    }
    if x == T::zero() {
        return Ok(if a == T::zero() {
            T::one()
        } else if a > T::zero() {
            T::zero()
        } else {
            T::infinity()
        });
    }
    match regime(a, x) {
        Regime::Series => Ok(series_prefactor(a, x) * series_sum(a, x * x)),
        Regime::Hankel => match hankel(a, x) {
            Some(v) => Ok(v),
            None => steed_any_order(a, x),
        },
        Regime::Steed => steed_any_order(a, x),
    }
}

/// The even entire function `G_a(x) = x^{-a} J_a(x)`, any real `x`.
pub fn bessel_j_entire<T: Real>(a: T, x: T) -> Result<T> {
    check_order(a)?;
    if !x.is_finite() {
        bail!(Domain, "bessel_j_entire needs finite x, got {x}");
    }
    let ax = x.abs();
    match regime(a, ax) {
        Regime::Series => Ok(entire_at_zero(a) * series_sum(a, ax * ax)),
        _ => Ok(bessel_j(a, ax)? * ax.powf(-a)),
    }
}

/// `J_a'(x) = (a/x) J_a(x) - J_{a+1}(x)` for `x > 0`.
pub fn bessel_j_prime<T: Real>(a: T, x: T) -> Result<T> {
    check_order(a)?;
    if !(x > T::zero()) || !x.is_finite() {
        bail!(Domain, "bessel_j_prime needs x > 0, got {x}");
    }
    Ok(a / x * bessel_j(a, x)? - bessel_j(a + T::one(), x)?)
}
