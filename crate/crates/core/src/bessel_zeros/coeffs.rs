//! Polynomial coefficients of the normal-form potential `C(x)` of the
//! second-order equation solved by `c J_a(x) + d J_{a+1}(x)`, of its
//! derivative, and of the Liouville potential `Omega(x)` used for the
//! `a < -1/2`, `cd < 0` comparison.
//!
//! All coefficients are kept unnormalized in `(c, d)`.

use crate::scalar::Real;

/// `a0..a4`, `b0..b3`, `q2`, `e0..e4`, `f0..f3` for one `(a, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialCoeffs<T> {
    /// Numerator of `C(x)`, highest power first.
    pub a: [T; 5],
    /// Numerator of `C'(x)` (without the `(2a+1)` prefactor), highest power first.
    pub b: [T; 4],
    /// `4 (2a+1)^2 c^2 d^2`, the `x^2` coefficient of `4 x^2 (Sx + P)^2`.
    pub q2: T,
    /// `Omega(x) = e0 + e1/x + e2/x^2 + e3/x^3 + e4/x^4`.
    pub e: [T; 5],
    /// `Omega'(x) = f0/x^2 + f1/x^3 + f2/x^4 + f3/x^5`.
    pub f: [T; 4],
    s: T,
    p: T,
    two_a_plus_one: T,
}

impl<T: Real> PotentialCoeffs<T> {
    pub fn new(a: T, c: T, d: T) -> Self {
        let one = T::one();
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        let four = T::lit(4.0);
        let c2 = c * c;
        let d2 = d * d;
        let cd = c * d;
        let s = c2 + d2;
        let ta1 = two * a + one;
        let p = ta1 * cd;
        let a2 = a * a;

        let a0 = four * s * s;
        let a1 = T::lit(8.0) * ta1 * cd * s;
        let a2c = ta1 * (d2 - c2) * (two * a * (c2 - d2) - c2 - three * d2);
        let a3 = -four * cd * ta1 * (two * a2 * s + a * (c2 + three * d2) - c2);
        let a4 = -four * a * c2 * d2 * (a + one) * ta1 * ta1;

        let b0 = s * s * (two * a * s - c2 + three * d2);
        let b1 = T::lit(6.0) * cd * s * (two * a2 * s + a * (c2 + three * d2) - c2);
        let b2 = two * ta1 * c2 * d2 * (T::lit(6.0) * a2 * s + a * (T::lit(5.0) * c2 + T::lit(7.0) * d2) - c2);
        let b3 = four * a * (a + one) * ta1 * ta1 * c2 * cd * d2;

        let q2 = four * ta1 * ta1 * c2 * d2;

        let quarter = T::lit(0.25);
        let cmd = c2 - d2;
        let e0 = s * s;
        let e1 = two * ta1 * cd * s;
        let e2 = -quarter
            * (four * a2 * cmd * cmd + T::lit(8.0) * a * d2 * (d2 - c2) - c2 * c2 - two * c2 * d2 + three * d2 * d2);
        let e3 = -cd * ta1 * (two * a2 * s + a * (c2 + three * d2) - two * c2 - d2);
        let quad = four * a2 + four * a - three;
        let e4 = -quarter * c2 * d2 * ta1 * ta1 * quad;

        let f0 = -two * cd * ta1 * s;
        let f1 = T::lit(0.5)
            * (c2 * c2 * (four * a2 - one)
                + c2 * d2 * (-T::lit(8.0) * a2 - T::lit(8.0) * a - two)
                + d2 * d2 * (four * a2 + T::lit(8.0) * a + three));
        let f2 = three * cd * ta1 * (c2 * (two * a2 + a - two) + d2 * (two * a2 + three * a - one));
        // f3 = -4 e4; the sign is forced by differentiating Omega term by term
        let f3 = c2 * d2 * ta1 * ta1 * quad;

        Self {
            a: [a0, a1, a2c, a3, a4],
            b: [b0, b1, b2, b3],
            q2,
            e: [e0, e1, e2, e3, e4],
            f: [f0, f1, f2, f3],
            s,
            p,
            two_a_plus_one: ta1,
        }
    }

    /// `S x + P` with `S = c^2 + d^2`, `P = (2a+1) c d`.
    #[inline]
    pub fn pole_factor(&self, x: T) -> T {
        self.s * x + self.p
    }

    /// Root of `S x + P`; the potential has a pole there.
    pub fn pole(&self) -> T {
        -self.p / self.s
    }

    pub fn potential(&self, x: T) -> T {
        let [a0, a1, a2, a3, a4] = self.a;
        let num = (((a0 * x + a1) * x + a2) * x + a3) * x + a4;
        let q = self.pole_factor(x);
        num / (T::lit(4.0) * x * x * q * q)
    }

    pub fn potential_derivative(&self, x: T) -> T {
        let [b0, b1, b2, b3] = self.b;
        let num = ((b0 * x + b1) * x + b2) * x + b3;
        let q = self.pole_factor(x);
        self.two_a_plus_one * num / (T::lit(2.0) * x * x * x * q * q * q)
    }

    pub fn omega(&self, x: T) -> T {
        let [e0, e1, e2, e3, e4] = self.e;
        let r = x.recip();
        (((e4 * r + e3) * r + e2) * r + e1) * r + e0
    }

    pub fn omega_derivative(&self, x: T) -> T {
        let [f0, f1, f2, f3] = self.f;
        let r = x.recip();
        (((f3 * r + f2) * r + f1) * r + f0) * r * r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_at_unit_parameters() {
        // hand evaluation with S = 2, P = 3
        let k = PotentialCoeffs::new(1.0_f64, 1.0, 1.0);
        assert_eq!(k.a, [16.0, 48.0, 0.0, -84.0, -72.0]);
        assert_eq!(k.b, [24.0, 84.0, 138.0, 72.0]);
        assert_eq!(k.q2, 36.0);
        assert_eq!(k.e, [4.0, 12.0, 0.0, -15.0, -11.25]);
        assert_eq!(k.f, [-12.0, 0.0, 45.0, 45.0]);
    }

    #[test]
    fn omega_derivative_matches_termwise_differentiation() {
        for &(a, c, d) in &[(-0.75_f64, -1.0_f64, 2.0_f64), (0.3, 1.2, -0.7), (2.0, 0.5, 0.5)] {
            let k = PotentialCoeffs::new(a, c, d);
            assert!((k.f[0] + k.e[1]).abs() < 1e-14);
            assert!((k.f[1] + 2.0 * k.e[2]).abs() < 1e-13);
            assert!((k.f[2] + 3.0 * k.e[3]).abs() < 1e-13);
            assert!((k.f[3] + 4.0 * k.e[4]).abs() < 1e-13);
        }
    }

    #[test]
    fn reduced_numerator_identity() {
        // a2 - q2 = -(2a+1)((2a-1)c^4 + 2(2a+1)c^2 d^2 + (2a+3)d^4)
        for &(a, c, d) in &[(0.5_f64, 1.0_f64, 1.0_f64), (3.0, 0.2, 1.7), (-0.4, 2.0, -1.0)] {
            let k = PotentialCoeffs::new(a, c, d);
            let t = 2.0 * a + 1.0;
            let rhs = -t * ((2.0 * a - 1.0) * c.powi(4) + 2.0 * t * c * c * d * d + (2.0 * a + 3.0) * d.powi(4));
            assert!((k.a[2] - k.q2 - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }
}
