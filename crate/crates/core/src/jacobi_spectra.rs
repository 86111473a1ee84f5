//! Zeros of `p_n` as eigenvalues of the Jacobi matrix, and their indexing
//! around a point `x_0`:
//! `... < x_{-2} < x_{-1} <= x_0 < x_1 < x_2 < ...`.

use std::collections::BTreeMap;

use crate::error::{bail, Result};
use crate::measure::RecurrenceTable;
use crate::scalar::Real;
use crate::tridiag::SymTridiagonal;

/// Absolute bisection width before the Newton polish.
const BISECTION_TOL: f64 = 1e-13;

/// A zero closer than this to `x_0` is taken to be `x_0` itself.
pub const SNAP_TOL: f64 = 1e-13;

/// The `n x n` truncation of the Jacobi matrix of a recurrence table.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
    offdiag_sq: Vec<T>,
}

impl<T: Real> JacobiMatrix<T> {
    pub fn from_table(rec: &RecurrenceTable<T>, n: usize) -> Result<Self> {
        if n == 0 || n > rec.len() {
            bail!(Precondition, "need 1 <= n <= {}, got n = {n}", rec.len());
        }
        let offdiag_sq = rec.offdiag_sq()[..n - 1].to_vec();
        Ok(Self { diag: rec.diag()[..n].to_vec(), offdiag: offdiag_sq.iter().map(|b| b.sqrt()).collect(), offdiag_sq })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    /// `sqrt(b_1) .. sqrt(b_{n-1})`.
    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    fn sturm(&self) -> Result<SymTridiagonal<'_, T>> {
        SymTridiagonal::new(&self.diag, &self.offdiag_sq)
    }

    /// Number of eigenvalues strictly below `t`.
    pub fn count_below(&self, t: T) -> usize {
        // construction already validated the entries
        self.sturm().map(|s| s.count_below(t)).unwrap_or(0)
    }

    /// Eigenvalue of 0-based `rank`.
    pub fn eigenvalue(&self, rank: usize) -> Result<T> {
        self.sturm()?.eigenvalue(rank, T::tol(BISECTION_TOL))
    }
}

/// All `n` zeros of `p_n`, increasing.
pub fn all_zeros<T: Real>(rec: &RecurrenceTable<T>, n: usize) -> Result<Vec<T>> {
    let jm = JacobiMatrix::from_table(rec, n)?;
    let s = jm.sturm()?;
    let (lo, hi) = s.gershgorin();
    let tol = T::tol(BISECTION_TOL);
    let mut out: Vec<T> = Vec::with_capacity(n);
    for rank in 0..n {
        // the previous eigenvalue's bracket start is a valid lower bound
        let start = out.last().map_or(lo, |&p| p - tol);
        let start = if s.count_below(start) <= rank { start } else { lo };
        out.push(s.eigenvalue_in(rank, start, hi, tol)?);
    }
    if out.windows(2).any(|w| !(w[0] < w[1])) {
        bail!(IterationFailure, "eigenvalues of the {n} x {n} Jacobi matrix are not strictly separated");
    }
    Ok(out)
}

/// Zeros of `p_n` indexed around `x_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredZeroSet<T> {
    center: T,
    n: usize,
    zeros: BTreeMap<i64, T>,
}

impl<T: Real> CenteredZeroSet<T> {
    pub fn center(&self) -> T {
        self.center
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn zeros(&self) -> &BTreeMap<i64, T> {
        &self.zeros
    }

    /// `x_{k,n}`, with `x_{0,n} = x_0`.
    pub fn get(&self, k: i64) -> Option<T> {
        if k == 0 {
            Some(self.center)
        } else {
            self.zeros.get(&k).copied()
        }
    }

    /// True when `x_0` is itself a zero (stored at `k = -1`).
    pub fn center_is_zero(&self) -> bool {
        self.zeros.get(&-1) == Some(&self.center)
    }
}

fn rank_window<T: Real>(s: &SymTridiagonal<'_, T>, x0: T) -> (usize, usize) {
    let tau = T::tol(SNAP_TOL) * x0.abs().max(T::one());
    (s.count_below(x0 - tau), s.count_below(x0 + tau))
}

/// Up to `count` zeros on each side of `x0`, found by Sturm counts and
/// bisection of only the ranks adjacent to `x0`.
pub fn zeros_near<T: Real>(rec: &RecurrenceTable<T>, n: usize, x0: T, count: usize) -> Result<CenteredZeroSet<T>> {
    if !(x0 > -T::one() && x0 < T::one()) {
        bail!(Precondition, "x0 must lie in (-1, 1), got {x0}");
    }
    if count == 0 || count > n {
        bail!(Precondition, "count must be in 1..={n}, got {count}");
    }
    let jm = JacobiMatrix::from_table(rec, n)?;
    let s = jm.sturm()?;
    let (lo, hi) = s.gershgorin();
    let tol = T::tol(BISECTION_TOL);
    let (c_lo, c_hi) = rank_window(&s, x0);
    let mut zeros = BTreeMap::new();
    // ranks 0..left_end are at or below x0, ranks right_start.. above it
    let (left_end, right_start) = if c_hi == c_lo + 1 {
        zeros.insert(-1, x0);
        (c_lo, c_hi)
    } else {
        let c = s.count_below(x0);
        (c, c)
    };
    let first_left = if zeros.is_empty() { -1 } else { -2 };
    for (i, rank) in (0..left_end).rev().take(count).enumerate() {
        zeros.insert(first_left - i as i64, s.eigenvalue_in(rank, lo, x0, tol)?);
    }
    for (i, rank) in (right_start..n).take(count).enumerate() {
        zeros.insert(i as i64 + 1, s.eigenvalue_in(rank, x0, hi, tol)?);
    }
    let ordered: Vec<T> = zeros.values().copied().collect();
    if ordered.windows(2).any(|w| !(w[0] < w[1])) {
        bail!(IterationFailure, "zeros near {x0} are not strictly separated");
    }
    Ok(CenteredZeroSet { center: x0, n, zeros })
}

/// `a_{k,n} = n (x_{k,n} - x_0) / sqrt(1 - x_0^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledZeroFrame<T> {
    n: usize,
    center: T,
    scaled: BTreeMap<i64, T>,
}

impl<T: Real> ScaledZeroFrame<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn scaled(&self) -> &BTreeMap<i64, T> {
        &self.scaled
    }

    /// `a_{k,n}`, with `a_{0,n} = 0`.
    pub fn get(&self, k: i64) -> Option<T> {
        if k == 0 {
            Some(T::zero())
        } else {
            self.scaled.get(&k).copied()
        }
    }

    /// `a_{k+1,n} - a_{k,n}` under the `a_{0,n} = 0` convention.
    pub fn gap(&self, k: i64) -> Option<T> {
        Some(self.get(k + 1)? - self.get(k)?)
    }

    /// Gap between consecutive actual zeros. Offset `0` straddles `x_0`
    /// (`a_1 - a_{-1}`), offset `j > 0` is `a_{j+1} - a_j` and offset
    /// `j < 0` is `a_j - a_{j-1}`.
    pub fn zero_gap(&self, offset: i64) -> Option<T> {
        let (l, r) = match offset {
            0 => (-1, 1),
            j if j > 0 => (j, j + 1),
            j => (j - 1, j),
        };
        Some(self.scaled.get(&r).copied()? - self.scaled.get(&l).copied()?)
    }
}

pub fn scale_zeros<T: Real>(zs: &CenteredZeroSet<T>) -> ScaledZeroFrame<T> {
    let factor = T::from_usize_lossy(zs.n) / (T::one() - zs.center * zs.center).sqrt();
    let scaled = zs.zeros.iter().map(|(&k, &x)| (k, factor * (x - zs.center))).collect();
    ScaledZeroFrame { n: zs.n, center: zs.center, scaled }
}
