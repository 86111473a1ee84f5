//! Gauss–Jacobi rules for `(1-t)^alpha (1+t)^beta` on `[-1, 1]`.

use crate::bessel_zeros::{combo_zero, ComboSpec, ZeroIndex};
use crate::error::{bail, Result};
use crate::scalar::Real;
use crate::specfun::{gamma, ln_gamma};
use crate::tridiag::SymTridiagonal;

/// Monic recurrence `(a_0..a_{m-1}, b_1..b_{m-1})` of the Jacobi weight.
pub(crate) fn jacobi_recurrence<T: Real>(alpha: T, beta: T, m: usize) -> (Vec<T>, Vec<T>) {
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m.saturating_sub(1));
    for k in 0..m {
        let kf = T::from_usize_lossy(k);
        let s = two * kf + ab;
        a.push(if k == 0 { (beta - alpha) / (ab + two) } else { (beta - alpha) * (beta + alpha) / (s * (s + two)) });
        if k >= 1 {
            b.push(if k == 1 {
                four * (one + alpha) * (one + beta) / ((two + ab) * (two + ab) * (T::lit(3.0) + ab))
            } else {
                four * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + one) * (s - one))
            });
        }
    }
    (a, b)
}

/// `int (1-t)^alpha (1+t)^beta dt`.
pub(crate) fn jacobi_mass<T: Real>(alpha: T, beta: T) -> T {
    let one = T::one();
    let two = T::lit(2.0);
    let direct = two.powf(alpha + beta + one) * gamma(alpha + one) * gamma(beta + one) / gamma(alpha + beta + two);
    if direct.is_finite() && direct > T::zero() {
        return direct;
    }
    ((alpha + beta + one) * two.ln() + ln_gamma(alpha + one) + ln_gamma(beta + one) - ln_gamma(alpha + beta + two))
        .exp()
}

/// Initial angles `theta_i ~ arccos x_i`, ascending (so `x` descending).
fn initial_angles<T: Real>(alpha: T, beta: T, m: usize) -> Vec<T> {
    let one = T::one();
    let half = T::lit(0.5);
    let rho = T::from_usize_lossy(m) + (alpha + beta + one) * half;
    let mut th: Vec<T> = (1..=m)
        .map(|i| ((T::from_usize_lossy(i) + alpha * half - T::lit(0.25)) * T::PI() / rho).min(T::PI()))
        .collect();
    // Bessel-zero guesses are sharper in the clustered end regions
    let edge = m.min(8);
    let near = |a: T, b: T, i: usize| -> Option<T> {
        let nu = (rho * rho + (one - a * a - T::lit(3.0) * b * b) / T::lit(12.0)).sqrt();
        let spec = ComboSpec::new(a, one, T::zero()).ok()?;
        let j = combo_zero(&spec, ZeroIndex::new(i as i64).ok()?).ok()?;
        let t = j / nu;
        (t < T::FRAC_PI_2()).then_some(t)
    };
    for i in 1..=edge {
        if let Some(t) = near(alpha, beta, i) {
            th[i - 1] = t;
        }
        if let Some(t) = near(beta, alpha, i) {
            th[m - i] = T::PI() - t;
        }
    }
    th
}

/// The orthonormal Jacobi recurrence rewritten in `y = 1 - x` with
/// differences `D_k = p_k - p_{k-1}` (Reinsch's device). The defects
/// `g_k = 1 - a_k - s_k - s_{k+1}` are `O(k^-2)` and are formed in closed
/// form, so nodes and Christoffel numbers next to `x = 1` keep their
/// relative accuracy.
struct EndRecurrence<T> {
    /// `g_0..g_{m-1}`
    g: Vec<T>,
    /// `s_0 = 0, s_1..s_m` with `s_k = sqrt(b_k)`
    s: Vec<T>,
}

impl<T: Real> EndRecurrence<T> {
    fn new(alpha: T, beta: T, m: usize) -> Self {
        let one = T::one();
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let ab = alpha + beta;
        let (a, b) = jacobi_recurrence(alpha, beta, m + 1);
        let mut s = Vec::with_capacity(m + 1);
        s.push(T::zero());
        s.extend(b.iter().map(|v| v.sqrt()));
        // 1/2 - s_k, with 1/4 - b_k = (S^2 (2a^2 + 2b^2 - 1) - (a^2 - b^2)^2) / (4 S^2 (S^2 - 1))
        let diff2 = (alpha * alpha - beta * beta) * (alpha * alpha - beta * beta);
        let c2 = two * (alpha * alpha + beta * beta) - one;
        let h: Vec<T> = (0..=m)
            .map(|k| {
                if k <= 2 {
                    return half - s[k];
                }
                let sk = two * T::from_usize_lossy(k) + ab;
                let num = sk * sk * c2 - diff2;
                num / (T::lit(4.0) * sk * sk * (sk * sk - one)) / (half + s[k])
            })
            .collect();
        let mut g = Vec::with_capacity(m);
        g.push(two * (alpha + one) / (ab + two) - s[1]);
        for k in 1..m {
            g.push(h[k] + h[k + 1] - a[k]);
        }
        Self { g, s }
    }

    /// `(p_n, dp_n/dy, sum_{k<n} p_k^2)` at `y`, with `p_0 = 1` and a common
    /// rescaling factor that cancels in both uses below.
    fn eval(&self, y: T, n: usize) -> (T, T, T) {
        let big = T::lit(1e100);
        let (mut p, mut dp) = (T::one(), T::zero());
        let (mut d, mut dd) = (T::one(), T::zero());
        let mut sum = T::zero();
        let mut log_scale = T::zero();
        for k in 0..n {
            sum = sum + p * p;
            let e = self.g[k] - y;
            let inv = self.s[k + 1].recip();
            let d_next = (e * p + self.s[k] * d) * inv;
            let dd_next = (e * dp - p + self.s[k] * dd) * inv;
            d = d_next;
            dd = dd_next;
            p = p + d;
            dp = dp + dd;
            if p.abs() > big {
                let f = p.abs().recip();
                p = p * f;
                dp = dp * f;
                d = d * f;
                dd = dd * f;
                sum = sum * f * f;
                log_scale = log_scale - T::lit(2.0) * f.ln();
            }
        }
        (p, dp, sum * log_scale.exp())
    }

    fn newton(&self, mut y: T) -> T {
        let m = self.g.len();
        for _ in 0..40 {
            let (p, dp, _) = self.eval(y, m);
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            let next = (y - step).max(T::zero()).min(T::lit(2.0));
            let done = (next - y).abs() <= T::lit(4.0) * T::epsilon() * next;
            y = next;
            if done {
                break;
            }
        }
        y
    }

    /// `sum_{k<m} p_k(y)^2`.
    fn christoffel_sum(&self, y: T) -> T {
        self.eval(y, self.g.len()).2
    }
}

#[derive(Clone, Copy, PartialEq)]
enum End {
    Upper,
    Lower,
}

/// Every midpoint between consecutive candidates separates exactly the
/// right number of eigenvalues.
fn certified<T: Real>(mat: &SymTridiagonal<'_, T>, x: &[T]) -> bool {
    x.windows(2).enumerate().all(|(i, w)| w[0] < w[1] && mat.count_below(w[0] + (w[1] - w[0]) / T::lit(2.0)) == i + 1)
}

/// Nodes ascending and positive weights of the `m`-point rule.
pub fn gauss_jacobi<T: Real>(alpha: T, beta: T, m: usize) -> Result<(Vec<T>, Vec<T>)> {
    if m == 0 {
        bail!(Precondition, "a Gauss rule needs at least one node");
    }
    if !(alpha > -T::one() && beta > -T::one()) {
        bail!(Domain, "Jacobi exponents must exceed -1, got ({alpha}, {beta})");
    }
    let (a, b) = jacobi_recurrence(alpha, beta, m);
    let mass = jacobi_mass(alpha, beta);
    if m == 1 {
        return Ok((vec![a[0]], vec![mass]));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let mat = SymTridiagonal::new(&a, &b)?;
    let symmetric = alpha == beta;
    let upper = EndRecurrence::new(alpha, beta, m);
    // the lower end is the upper end of the reflected weight
    let lower = if symmetric { None } else { Some(EndRecurrence::new(beta, alpha, m)) };
    let form = |end: End| match end {
        End::Upper => &upper,
        End::Lower => lower.as_ref().unwrap_or(&upper),
    };

    let angles = initial_angles(alpha, beta, m);
    let solve = |th: T| -> (End, T) {
        if th < T::FRAC_PI_2() {
            (End::Upper, upper.newton(two * (th / two).sin().powi(2)))
        } else {
            (End::Lower, form(End::Lower).newton(two * (th / two).cos().powi(2)))
        }
    };
    let mut nodes: Vec<(End, T)> = Vec::with_capacity(m);
    if symmetric {
        for &th in &angles[..m / 2] {
            let y = upper.newton(two * (th / two).sin().powi(2));
            nodes.push((End::Upper, y));
            nodes.push((End::Lower, y));
        }
        if m % 2 == 1 {
            nodes.push((End::Upper, one));
        }
    } else {
        nodes.extend(angles.iter().map(|&th| solve(th)));
    }
    let to_x = |(end, y): (End, T)| match end {
        End::Upper => one - y,
        End::Lower => y - one,
    };
    nodes.sort_by(|p, q| to_x(*p).partial_cmp(&to_x(*q)).unwrap_or(std::cmp::Ordering::Equal));
    let mut x: Vec<T> = nodes.iter().map(|&e| to_x(e)).collect();
    if !certified(&mat, &x) {
        let tol = T::tol(1e-15);
        for (rank, slot) in x.iter_mut().enumerate() {
            *slot = mat.eigenvalue(rank, tol)?;
        }
        if !certified(&mat, &x) {
            bail!(Quadrature, "Gauss-Jacobi nodes for ({alpha}, {beta}, {m}) could not be separated");
        }
        nodes = x
            .iter()
            .map(|&v| {
                if v > T::zero() {
                    (End::Upper, upper.newton(one - v))
                } else {
                    (End::Lower, form(End::Lower).newton(one + v))
                }
            })
            .collect();
    }
    let mut w: Vec<T> = nodes.iter().map(|&(end, y)| mass / form(end).christoffel_sum(y)).collect();
    if symmetric {
        for i in 0..m / 2 {
            let v = (w[i] + w[m - 1 - i]) / two;
            w[i] = v;
            w[m - 1 - i] = v;
        }
    }
    if w.iter().any(|v| !(*v > T::zero()) || !v.is_finite()) {
        bail!(Quadrature, "non-positive Gauss-Jacobi weight for ({alpha}, {beta}, {m})");
    }
    Ok((x, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn chebyshev_rule_is_closed_form() {
        let m = 37;
        let (x, w) = gauss_jacobi(-0.5_f64, -0.5, m).unwrap();
        for (i, (&xi, &wi)) in x.iter().zip(&w).enumerate() {
            let want = -((2 * i + 1) as f64 * PI / (2 * m) as f64).cos();
            assert!((xi - want).abs() < 1e-15, "{i}");
            assert!((wi - PI / m as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn integrates_polynomials_exactly() {
        // int (1-t)^a (1+t)^b t dt = mass * (b - a)/(a + b + 2)
        for &(a, b) in &[(0.0_f64, 0.0), (1.0, 0.0), (-0.7, 2.5), (7.0, -0.9), (0.5, 0.5)] {
            let (x, w) = gauss_jacobi(a, b, 12).unwrap();
            let mass = jacobi_mass(a, b);
            let m0: f64 = w.iter().sum();
            let m1: f64 = x.iter().zip(&w).map(|(x, w)| x * w).sum();
            assert!((m0 - mass).abs() < 1e-13 * mass);
            assert!((m1 - mass * (b - a) / (a + b + 2.0)).abs() < 1e-13 * mass);
        }
        // Legendre moments
        let (x, w) = gauss_jacobi(0.0_f64, 0.0, 10).unwrap();
        for j in (0..20).step_by(2) {
            let s: f64 = x.iter().zip(&w).map(|(x, w)| x.powi(j) * w).sum();
            assert!((s - 2.0 / (j as f64 + 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn large_rules_are_certified() {
        for &(a, b, tol) in &[(0.0_f64, 1.0, 1e-13), (12.0, -0.5, 1e-13), (-0.5, 3.0, 1e-13), (-0.95, 3.0, 1e-13)] {
            let (x, w) = gauss_jacobi(a, b, 3000).unwrap();
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            let s: f64 = w.iter().sum();
            assert!((s - jacobi_mass(a, b)).abs() < tol * s, "({a},{b}): {s} vs {}", jacobi_mass(a, b));
        }
    }
}
