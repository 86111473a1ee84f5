use super::composite::{build_composite_rule, QuadratureRule};
use super::gauss_jacobi::{jacobi_mass, jacobi_recurrence};
use super::GeneralizedJacobiMeasure;
use crate::error::{bail, Result};
use crate::scalar::{compensated_sum, Real};

/// Largest supported number of recurrence coefficients.
pub const MAX_COEFFICIENTS: usize = 20_000;

const AGREEMENT: f64 = 1e-11;

/// How a table was obtained from quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConvergenceInfo {
    /// Per-subinterval degree of the final rule.
    pub degree: usize,
    /// Largest coefficient change between the last two refinements.
    pub max_change: f64,
    /// Number of rules built.
    pub refinements: usize,
}

/// Monic recurrence `pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1}` with
/// `b_0` the total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable<T> {
    diag: Vec<T>,
    offdiag_sq: Vec<T>,
    mass: T,
    convergence: ConvergenceInfo,
}

impl<T: Real> RecurrenceTable<T> {
    /// `diag = a_0..a_{N-1}`, `offdiag_sq = b_1..b_{N-1}`.
    pub fn new(diag: Vec<T>, offdiag_sq: Vec<T>, mass: T) -> Result<Self> {
        if diag.is_empty() {
            bail!(Precondition, "empty recurrence table");
        }
        if offdiag_sq.len() + 1 != diag.len() {
            bail!(Precondition, "need {} off-diagonal entries, got {}", diag.len() - 1, offdiag_sq.len());
        }
        if !(mass > T::zero()) || offdiag_sq.iter().any(|b| !(*b > T::zero())) {
            bail!(InvalidMeasure, "mass and off-diagonal entries must be positive");
        }
        if diag.iter().chain(&offdiag_sq).any(|v| !v.is_finite()) {
            bail!(InvalidMeasure, "non-finite recurrence coefficient");
        }
        Ok(Self { diag, offdiag_sq, mass, convergence: ConvergenceInfo::default() })
    }

    /// Closed-form table of `(1-x)^alpha (1+x)^beta`.
    pub fn jacobi(alpha: T, beta: T, n: usize) -> Result<Self> {
        if !(alpha > -T::one() && beta > -T::one()) {
            bail!(InvalidMeasure, "Jacobi exponents must exceed -1");
        }
        let (a, b) = jacobi_recurrence(alpha, beta, n.max(1));
        Self::new(a, b, jacobi_mass(alpha, beta))
    }

    /// Number of coefficient pairs, `N`.
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag_sq(&self) -> &[T] {
        &self.offdiag_sq
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn convergence(&self) -> ConvergenceInfo {
        self.convergence
    }

    /// `b_k` with `b_0` the mass.
    pub fn b(&self, k: usize) -> T {
        if k == 0 {
            self.mass
        } else {
            self.offdiag_sq[k - 1]
        }
    }

    /// `pi_n(x)` by the monic recurrence, `n <= N`.
    pub fn monic(&self, n: usize, x: T) -> Result<T> {
        if n > self.len() {
            bail!(Precondition, "degree {n} exceeds table length {}", self.len());
        }
        let (mut prev, mut cur) = (T::zero(), T::one());
        for k in 0..n {
            let b = if k == 0 { T::zero() } else { self.offdiag_sq[k - 1] };
            (prev, cur) = (cur, (x - self.diag[k]) * cur - b * prev);
        }
        Ok(cur)
    }

    /// `2^n pi_n(x)`, which stays of moderate size where `pi_n` itself
    /// underflows.
    pub fn monic_scaled(&self, n: usize, x: T) -> Result<T> {
        if n > self.len() {
            bail!(Precondition, "degree {n} exceeds table length {}", self.len());
        }
        let (two, four) = (T::lit(2.0), T::lit(4.0));
        let (mut prev, mut cur) = (T::zero(), T::one());
        for k in 0..n {
            let b = if k == 0 { T::zero() } else { self.offdiag_sq[k - 1] };
            (prev, cur) = (cur, two * (x - self.diag[k]) * cur - four * b * prev);
        }
        Ok(cur)
    }

    /// Orthonormal `p_0..p_n` at `x`.
    pub fn orthonormal_values(&self, n: usize, x: T) -> Result<Vec<T>> {
        if n > self.len() {
            bail!(Precondition, "degree {n} exceeds table length {}", self.len());
        }
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.mass.sqrt().recip());
        for k in 0..n {
            let prev = if k == 0 { T::zero() } else { self.offdiag_sq[k - 1].sqrt() * out[k - 1] };
            let sb =
                if k + 1 < self.len() { self.offdiag_sq[k] } else { bail!(Precondition, "b_{} not tabulated", k + 1) };
            out.push(((x - self.diag[k]) * out[k] - prev) / sb.sqrt());
        }
        Ok(out)
    }

    fn max_change(&self, other: &Self) -> T {
        let d = self.diag.iter().zip(&other.diag).map(|(a, b)| (*a - *b).abs());
        let o = self.offdiag_sq.iter().zip(&other.offdiag_sq).map(|(a, b)| (*a - *b).abs());
        let m = (self.mass - other.mass).abs() / self.mass.max(T::one());
        d.chain(o).fold(m, T::max)
    }
}

/// Discretized Stieltjes procedure in orthonormal form.
pub fn stieltjes_from_rule<T: Real>(rule: &QuadratureRule<T>, n: usize) -> Result<RecurrenceTable<T>> {
    if n == 0 {
        bail!(Precondition, "need at least one coefficient");
    }
    if rule.len() < n {
        bail!(Quadrature, "a rule with {} nodes cannot resolve {n} coefficients", rule.len());
    }
    let x = &rule.nodes;
    let w = &rule.weights;
    let mass = rule.total_weight();
    let mut prev = vec![T::zero(); x.len()];
    let mut cur = vec![mass.sqrt().recip(); x.len()];
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    let mut sqrt_b = T::zero();
    for k in 0..n {
        let a = compensated_sum(x.iter().zip(w).zip(&cur).map(|((&x, &w), &p)| w * x * p * p));
        diag.push(a);
        if k + 1 == n {
            break;
        }
        for i in 0..x.len() {
            prev[i] = (x[i] - a) * cur[i] - sqrt_b * prev[i];
        }
        let b = compensated_sum(w.iter().zip(&prev).map(|(&w, &r)| w * r * r));
        if !(b > T::zero()) {
            bail!(Quadrature, "b_{} vanished; quadrature too coarse", k + 1);
        }
        off.push(b);
        sqrt_b = b.sqrt();
        let s = sqrt_b.recip();
        for (r, c) in prev.iter_mut().zip(cur.iter_mut()) {
            let next = *r * s;
            *r = *c;
            *c = next;
        }
    }
    RecurrenceTable::new(diag, off, mass)
}

/// `a_0..a_{N-1}`, `b_0..b_{N-1}` of the measure, refining the composite rule
/// from degree `2N` by doubling until two tables agree to `1e-11`.
pub fn stieltjes_recurrence<T: Real>(measure: &GeneralizedJacobiMeasure<T>, n: usize) -> Result<RecurrenceTable<T>> {
    if n == 0 {
        bail!(Precondition, "N must be at least 1");
    }
    if n > MAX_COEFFICIENTS {
        bail!(Precondition, "N = {n} exceeds the supported maximum {MAX_COEFFICIENTS}");
    }
    let tol = T::tol(AGREEMENT);
    let mut degree = 2 * n;
    let mut previous: Option<RecurrenceTable<T>> = None;
    let mut refinements = 0;
    loop {
        let rule = build_composite_rule(measure, degree)?;
        let mut table = stieltjes_from_rule(&rule, n)?;
        refinements += 1;
        if let Some(prev) = previous {
            let change = table.max_change(&prev);
            table.convergence = ConvergenceInfo { degree, max_change: change.to_f64_lossy(), refinements };
            if change <= tol {
                return Ok(table);
            }
            if degree * 2 > 64 * n {
                bail!(NonConvergence, "recurrence not stable to {AGREEMENT:e} by degree {degree}: change {change}");
            }
        }
        previous = Some(table);
        degree *= 2;
    }
}
