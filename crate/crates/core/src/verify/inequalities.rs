//! Convexity and comparison inequalities for consecutive zeros `j_k(a, c, d)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bessel_zeros::{combo_zeros_range, second_difference, sigma, ComboSpec};
use crate::error::{bail, Result};
use crate::scalar::Real;

/// Violations smaller than this are attributed to root-solver noise.
pub const INEQUALITY_SLACK: f64 = 1e-10;

/// One inequality together with the parameter region where it is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityCase {
    /// `a ≥ 1/2`, `cd > 0`: gaps decrease.
    ConvexityI,
    /// `0 < a < 1/2`, `cd > 0`.
    ConvexityII,
    /// `-1/2 < a ≤ 0`, `cd > 0`.
    ConvexityIII,
    /// `-1 < a < -1/2`, `d² ≥ c²`, `cd < 0`.
    ConvexityIV,
    /// `a ≥ 1/2`, `cd > 0`: every gap exceeds `π`.
    ComparisonI,
    /// `a ≥ 0`, `d² ≥ c²`, `cd > 0`.
    ComparisonII,
    /// `-1 < a < -1/2`, `d² ≥ c²`, `cd < 0`.
    ComparisonIII,
}

impl InequalityCase {
    pub const CONVEXITY: [Self; 4] = [Self::ConvexityI, Self::ConvexityII, Self::ConvexityIII, Self::ConvexityIV];
    pub const COMPARISON: [Self; 3] = [Self::ComparisonI, Self::ComparisonII, Self::ComparisonIII];

    pub fn id(self) -> &'static str {
        match self {
            Self::ConvexityI => "convexity-i",
            Self::ConvexityII => "convexity-ii",
            Self::ConvexityIII => "convexity-iii",
            Self::ConvexityIV => "convexity-iv",
            Self::ComparisonI => "comparison-i",
            Self::ComparisonII => "comparison-ii",
            Self::ComparisonIII => "comparison-iii",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::CONVEXITY.into_iter().chain(Self::COMPARISON).find(|c| c.id() == id)
    }

    /// Zeros `j_k .. j_{k+span-1}` enter the inequality for index `k`.
    fn span(self) -> usize {
        match self {
            Self::ConvexityI | Self::ConvexityII | Self::ConvexityIII | Self::ConvexityIV => 3,
            _ => 2,
        }
    }

    /// Whether `(a, c, d)` satisfies the hypotheses of this case.
    pub fn admits(self, a: f64, c: f64, d: f64) -> bool {
        let same = c * d > 0.0;
        let opposite = c * d < 0.0;
        let d_dominates = d * d >= c * c;
        match self {
            Self::ConvexityI | Self::ComparisonI => a >= 0.5 && same,
            Self::ConvexityII => a > 0.0 && a < 0.5 && same,
            Self::ConvexityIII => a > -0.5 && a <= 0.0 && same,
            Self::ConvexityIV | Self::ComparisonIII => a > -1.0 && a < -0.5 && d_dominates && opposite,
            Self::ComparisonII => a >= 0.0 && d_dominates && same,
        }
    }

    /// `(lhs, rhs)` of the inequality `lhs < rhs` for consecutive zeros
    /// `z = [j_k, j_{k+1}, (j_{k+2})]`.
    fn sides<T: Real>(self, s: T, z: &[T]) -> Result<(T, T)> {
        let two = T::lit(2.0);
        // log of (1 + s/x) without cancellation for small s/x
        let l1p = |x: T| (s / x).ln_1p();
        Ok(match self {
            Self::ConvexityI => (z[2] - z[1], z[1] - z[0]),
            Self::ConvexityII => {
                // ln of the ratio > s Δ²(1/j) − s² Δ²(1/j²)
                let (d1, _) = second_difference(z[0], z[1], z[2])?;
                let d2 = (z[2] * z[2]).recip() + (z[0] * z[0]).recip() - two * (z[1] * z[1]).recip();
                (s * d1 - s * s * d2, l1p(z[2]) + l1p(z[0]) - two * l1p(z[1]))
            }
            Self::ConvexityIII => {
                let (d1, _) = second_difference(z[0], z[1], z[2])?;
                (l1p(z[2]) + l1p(z[0]) - two * l1p(z[1]), s * d1)
            }
            Self::ConvexityIV => {
                let (_, dd) = second_difference(z[0], z[1], z[2])?;
                let lr = ((s + z[2]) / (s + z[1])).ln() + ((s + z[0]) / (s + z[1])).ln();
                (lr, dd / s)
            }
            Self::ComparisonI => (T::PI(), z[1] - z[0]),
            Self::ComparisonII => (T::PI(), s * (z[1] / z[0]).ln() + z[1] - z[0]),
            Self::ComparisonIII => (z[1] - z[0] - s * ((s + z[1]) / (s + z[0])).ln(), T::PI()),
        })
    }
}

/// Both sides of `lhs < rhs` at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityRow {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityRow {
    /// `rhs − lhs`; positive when the inequality holds.
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub case: InequalityCase,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub k_max: usize,
    pub rows: Vec<InequalityRow>,
    /// Rows where `lhs ≥ rhs + INEQUALITY_SLACK`.
    pub violations: Vec<InequalityRow>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates one case at one parameter tuple for `k = 1..=k_max`.
pub fn check_inequality<T: Real>(case: InequalityCase, a: T, c: T, d: T, k_max: usize) -> Result<InequalityReport> {
    let (af, cf, df) = (a.to_f64_lossy(), c.to_f64_lossy(), d.to_f64_lossy());
    if !case.admits(af, cf, df) {
        bail!(Hypothesis, "(a, c, d) = ({af}, {cf}, {df}) does not satisfy the hypotheses of {}", case.id());
    }
    if k_max == 0 {
        bail!(Precondition, "k_max must be at least 1");
    }
    let spec = ComboSpec::new(a, c, d)?;
    let s = sigma(&spec);
    let zeros = combo_zeros_range(&spec, k_max + case.span() - 1)?;
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (lhs, rhs) = case.sides(s, &zeros[k - 1..k - 1 + case.span()])?;
        rows.push(InequalityRow { k, lhs: lhs.to_f64_lossy(), rhs: rhs.to_f64_lossy() });
    }
    let violations = rows.iter().copied().filter(|r| !(r.margin() > -INEQUALITY_SLACK)).collect();
    Ok(InequalityReport { case, a: af, c: cf, d: df, k_max, rows, violations })
}

fn suite<T: Real>(
    cases: &[InequalityCase],
    grid: &[(InequalityCase, T, T, T)],
    k_max: usize,
) -> Result<Vec<InequalityReport>> {
    if let Some((case, ..)) = grid.iter().find(|g| !cases.contains(&g.0)) {
        bail!(Precondition, "{} is not part of this suite", case.id());
    }
    grid.par_iter().map(|&(case, a, c, d)| check_inequality(case, a, c, d, k_max)).collect()
}

/// The four convexity inequalities on a grid of `(case, a, c, d)`.
pub fn theorem2_suite<T: Real>(grid: &[(InequalityCase, T, T, T)], k_max: usize) -> Result<Vec<InequalityReport>> {
    suite(&InequalityCase::CONVEXITY, grid, k_max)
}

/// The three comparison inequalities on a grid of `(case, a, c, d)`.
pub fn theorem3_suite<T: Real>(grid: &[(InequalityCase, T, T, T)], k_max: usize) -> Result<Vec<InequalityReport>> {
    suite(&InequalityCase::COMPARISON, grid, k_max)
}

/// `count` seeded parameter tuples inside the hypothesis region of `case`.
pub fn hypothesis_grid(case: InequalityCase, count: usize, seed: u64) -> Vec<(InequalityCase, f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = match case {
            InequalityCase::ConvexityI | InequalityCase::ComparisonI => rng.gen_range(0.5..=5.0),
            InequalityCase::ConvexityII => rng.gen_range(0.0..0.5),
            InequalityCase::ConvexityIII => -rng.gen_range(0.0..0.5),
            InequalityCase::ConvexityIV | InequalityCase::ComparisonIII => -rng.gen_range(0.5..1.0),
            InequalityCase::ComparisonII => rng.gen_range(0.0..=5.0),
        };
        let mag_c: f64 = rng.gen_range(0.05..3.0);
        let mag_d: f64 = rng.gen_range(0.05..3.0);
        let (mag_c, mag_d) = match case {
            InequalityCase::ConvexityIV | InequalityCase::ComparisonII | InequalityCase::ComparisonIII => {
                (mag_c.min(mag_d), mag_c.max(mag_d))
            }
            _ => (mag_c, mag_d),
        };
        let sign_c = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let opposite = matches!(case, InequalityCase::ConvexityIV | InequalityCase::ComparisonIII);
        let sign_d = if opposite { -sign_c } else { sign_c };
        let (c, d) = (sign_c * mag_c, sign_d * mag_d);
        if case.admits(a, c, d) {
            out.push((case, a, c, d));
        }
    }
    out
}
