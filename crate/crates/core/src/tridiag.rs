//! Symmetric tridiagonal eigenvalues by Sturm-count bisection.
//!
//! The matrix is given by its diagonal `a_0..a_{n-1}` and its *squared*
//! off-diagonal `b_1..b_{n-1}`, which is exactly what a three-term recurrence
//! provides; square roots are never needed.

use crate::error::{bail, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy)]
pub struct SymTridiagonal<'a, T> {
    diag: &'a [T],
    offdiag_sq: &'a [T],
    pivmin: T,
}

impl<'a, T: Real> SymTridiagonal<'a, T> {
    /// `offdiag_sq` may be longer than needed; only the first `diag.len() - 1`
    /// entries are used.
    pub fn new(diag: &'a [T], offdiag_sq: &'a [T]) -> Result<Self> {
        if diag.is_empty() {
            bail!(Precondition, "empty matrix");
        }
        let m = diag.len() - 1;
        if offdiag_sq.len() < m {
            bail!(Precondition, "need {m} off-diagonal entries, got {}", offdiag_sq.len());
        }
        let offdiag_sq = &offdiag_sq[..m];
        if offdiag_sq.iter().any(|&b| !(b > T::zero())) {
            bail!(Precondition, "off-diagonal entries must be positive");
        }
        let bmax = offdiag_sq.iter().fold(T::one(), |m, &b| m.max(b));
        Ok(Self { diag, offdiag_sq, pivmin: T::min_positive_value() * bmax })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `t` (LDL^T inertia count).
    pub fn count_below(&self, t: T) -> usize {
        // a vanishing pivot is nudged upwards, which keeps the count strict
        let guard = |q: T| if q.abs() < self.pivmin { self.pivmin } else { q };
        let mut q = guard(self.diag[0] - t);
        let mut count = usize::from(q < T::zero());
        for (&a, &b) in self.diag[1..].iter().zip(self.offdiag_sq) {
            q = guard(a - t - b / q);
            count += usize::from(q < T::zero());
        }
        count
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 { self.offdiag_sq[i - 1].sqrt() } else { T::zero() };
            let right = if i + 1 < n { self.offdiag_sq[i].sqrt() } else { T::zero() };
            let r = left + right;
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        let pad = T::epsilon() * T::lit(16.0) * (lo.abs().max(hi.abs()) + T::one());
        (lo - pad, hi + pad)
    }

    /// `pi_n(x) / pi_n'(x)` for the monic characteristic polynomial, with
    /// running rescaling so neither value under- nor overflows.
    pub fn newton_step(&self, x: T) -> T {
        let small = T::min_positive_value().sqrt();
        let big = small.recip();
        let mut p_prev = T::zero();
        let mut p = T::one();
        let mut dp_prev = T::zero();
        let mut dp = T::zero();
        for (i, &a) in self.diag.iter().enumerate() {
            let b = if i == 0 { T::zero() } else { self.offdiag_sq[i - 1] };
            let p_next = (x - a) * p - b * p_prev;
            let dp_next = p + (x - a) * dp - b * dp_prev;
            p_prev = p;
            p = p_next;
            dp_prev = dp;
            dp = dp_next;
            let m = p.abs().max(dp.abs());
            if m > big || (m < small && m > T::zero()) {
                let s = m.recip();
                p = p * s;
                p_prev = p_prev * s;
                dp = dp * s;
                dp_prev = dp_prev * s;
            }
        }
        p / dp
    }

    /// Eigenvalue of 0-based `rank` inside `[lo, hi]`, where the caller
    /// guarantees `count_below(lo) <= rank < count_below(hi)`.
    pub fn eigenvalue_in(&self, rank: usize, mut lo: T, mut hi: T, tol: T) -> Result<T> {
        if rank >= self.len() {
            bail!(Precondition, "rank {rank} out of range for n = {}", self.len());
        }
        for _ in 0..200 {
            if hi - lo <= tol {
                break;
            }
            let mid = lo + (hi - lo) / T::lit(2.0);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) <= rank {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mid = lo + (hi - lo) / T::lit(2.0);
        // Newton polish, discarded if it leaves the certified bracket
        let mut x = mid;
        for _ in 0..3 {
            let step = self.newton_step(x);
            let cand = x - step;
            if !cand.is_finite() || cand < lo || cand > hi {
                break;
            }
            let done = (cand - x).abs() <= T::epsilon() * x.abs().max(T::one());
            x = cand;
            if done {
                break;
            }
        }
        Ok(x)
    }

    /// Eigenvalue of 0-based `rank`, searching the Gershgorin interval.
    pub fn eigenvalue(&self, rank: usize, tol: T) -> Result<T> {
        let (lo, hi) = self.gershgorin();
        self.eigenvalue_in(rank, lo, hi, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        // [[0, 1], [1, 0]] has eigenvalues -1, 1
        let diag = [0.0_f64, 0.0];
        let b = [1.0];
        let m = SymTridiagonal::new(&diag, &b).unwrap();
        assert_eq!(m.count_below(0.0), 1);
        assert_eq!(m.count_below(2.0), 2);
        assert!((m.eigenvalue(0, 1e-13).unwrap() + 1.0).abs() < 1e-15);
        assert!((m.eigenvalue(1, 1e-13).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_offdiagonal() {
        assert!(SymTridiagonal::new(&[0.0_f64, 0.0], &[0.0]).is_err());
        assert!(SymTridiagonal::<f64>::new(&[], &[]).is_err());
    }

    #[test]
    fn large_chebyshev_matrix_stays_finite() {
        let n = 3000;
        let diag = vec![0.0_f64; n];
        let mut b = vec![0.25; n - 1];
        b[0] = 0.5;
        let m = SymTridiagonal::new(&diag, &b).unwrap();
        let x = m.eigenvalue(n - 1, 1e-12).unwrap();
        let want = (std::f64::consts::PI / (2.0 * n as f64)).cos();
        assert!((x - want).abs() < 1e-14);
    }
}
