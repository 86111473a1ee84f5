//! Chebyshev series helpers.

use crate::error::{bail, Result};
use crate::scalar::Real;

/// `sum_j c_j T_j(x)` by Clenshaw's recurrence.
pub fn t_series<T: Real>(coeffs: &[T], x: T) -> T {
    let two_x = T::lit(2.0) * x;
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    match coeffs.first() {
        Some(&c0) => c0 + x * b1 - b2,
        None => T::zero(),
    }
}

/// `sum_j c_j U_j(x)` by Clenshaw's recurrence.
pub fn u_series<T: Real>(coeffs: &[T], x: T) -> T {
    let two_x = T::lit(2.0) * x;
    let (mut b1, mut b2) = (T::zero(), T::zero());
    for &c in coeffs.iter().rev() {
        let b0 = c + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    b1
}

/// Chebyshev coefficients of `f` on `[-1, 1]` from samples at the
/// Chebyshev points of the first kind, doubling the sample count from 16
/// until the upper quarter of the coefficients falls below `tol`.
pub fn fit<T: Real>(f: impl Fn(T) -> T, tol: T, max_points: usize) -> Result<Vec<T>> {
    let mut m = 16usize;
    while m <= max_points {
        let mf = T::from_usize_lossy(m);
        let thetas: Vec<T> = (0..m).map(|i| T::PI() * (T::from_usize_lossy(i) + T::lit(0.5)) / mf).collect();
        let values: Vec<T> = thetas.iter().map(|&t| f(t.cos())).collect();
        if values.iter().any(|v| !v.is_finite()) {
            bail!(Quadrature, "non-finite sample while fitting a Chebyshev series");
        }
        let mut coeffs: Vec<T> = (0..m)
            .map(|j| {
                let jf = T::from_usize_lossy(j);
                let s: T = values.iter().zip(&thetas).map(|(&v, &t)| v * (jf * t).cos()).sum();
                T::lit(2.0) * s / mf
            })
            .collect();
        coeffs[0] = coeffs[0] / T::lit(2.0);
        let scale = coeffs.iter().fold(T::one(), |a, c| a.max(c.abs()));
        let tail = coeffs[3 * m / 4..].iter().fold(T::zero(), |a, c| a.max(c.abs()));
        if tail <= tol * scale {
            while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.abs() <= tol * scale) {
                coeffs.pop();
            }
            return Ok(coeffs);
        }
        m *= 2;
    }
    bail!(Quadrature, "Chebyshev fit did not reach tolerance {tol} with {max_points} points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_match_trig_definitions() {
        let c = [0.3_f64, -1.2, 0.7, 0.25];
        for &x in &[-0.9_f64, -0.2, 0.0, 0.55, 1.0] {
            let th = x.acos();
            let t: f64 = c.iter().enumerate().map(|(j, cj)| cj * (j as f64 * th).cos()).sum();
            assert!((t_series(&c, x) - t).abs() < 1e-14);
            if x.abs() < 1.0 {
                let u: f64 = c.iter().enumerate().map(|(j, cj)| cj * ((j as f64 + 1.0) * th).sin() / th.sin()).sum();
                assert!((u_series(&c, x) - u).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn fit_recovers_polynomial_and_exponential() {
        let c = fit(|x: f64| 2.0 * x * x - 1.0 + 0.5 * x, 1e-14, 1024).unwrap();
        assert_eq!(c.len(), 3);
        assert!((c[1] - 0.5).abs() < 1e-15 && (c[2] - 1.0).abs() < 1e-15 && c[0].abs() < 1e-15);
        let e = fit(|x: f64| x.exp(), 1e-14, 1024).unwrap();
        assert!((t_series(&e, 0.3) - 0.3f64.exp()).abs() < 1e-14);
    }
}
