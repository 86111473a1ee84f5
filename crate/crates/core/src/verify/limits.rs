//! Large-`k` gaps of `j_k(a, c, d)`, simplicity of the zeros, and the
//! structural properties of the zero solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bessel_zeros::{combo_zero, combo_zeros_negative, combo_zeros_range, psi_eval, ComboSpec, ZeroIndex};
use crate::error::{bail, Result};
use crate::scalar::Real;

/// Default bound on `|gap_k − π|` at the largest probe.
pub const GAP_LIMIT_BOUND: f64 = 1e-4;

/// Deviations below this are indistinguishable from zero.
pub const GAP_NOISE_FLOOR: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct GapLimitReport {
    pub a: f64,
    pub c: f64,
    pub d: f64,
    /// `(k, |j_{k+1} − j_k − π|)` in increasing `k`.
    pub deviations: Vec<(usize, f64)>,
    pub bound: f64,
    pub passed: bool,
}

/// `|gap_k − π|` at each probe. Passes iff the deviation at the largest
/// probe is below `bound` and below the deviation at the smallest probe
/// (or both sit under the noise floor).
pub fn gap_limit<T: Real>(a: T, c: T, d: T, probes: &[usize], bound: f64) -> Result<GapLimitReport> {
    let mut probes = probes.to_vec();
    probes.sort_unstable();
    probes.dedup();
    let (Some(&first), Some(&last)) = (probes.first(), probes.last()) else { bail!(Precondition, "no probes") };
    if first == 0 {
        bail!(Precondition, "probe indices start at 1");
    }
    let spec = ComboSpec::new(a, c, d)?;
    let zeros = combo_zeros_range(&spec, last + 1)?;
    let deviations: Vec<(usize, f64)> =
        probes.iter().map(|&k| (k, (zeros[k] - zeros[k - 1] - T::PI()).abs().to_f64_lossy())).collect();
    let (d_first, d_last) = (deviations[0].1, deviations[deviations.len() - 1].1);
    let shrinks = d_last < d_first || d_last <= GAP_NOISE_FLOOR;
    Ok(GapLimitReport {
        a: a.to_f64_lossy(),
        c: spec.c().to_f64_lossy(),
        d: spec.d().to_f64_lossy(),
        deviations,
        bound,
        passed: d_last < bound && shrinks,
    })
}

/// [`gap_limit`] over a grid, in parallel, in grid order.
pub fn theorem4_suite<T: Real>(grid: &[(T, T, T)], probes: &[usize], bound: f64) -> Result<Vec<GapLimitReport>> {
    grid.par_iter().map(|&(a, c, d)| gap_limit(a, c, d, probes, bound)).collect()
}

/// `count` seeded tuples with `a ∈ (-0.9, 10)` and `(c, d)` of all sign
/// patterns, including `c = 0` and `d = 0`.
pub fn gap_limit_grid(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let a = -0.9 + 10.9 * (i as f64 + rng.gen_range(0.05..0.95)) / count as f64;
            let (c, d) = match i % 6 {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                _ => (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
            };
            (a, c, d)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplicityRow {
    pub k: usize,
    pub zero: f64,
    /// `ψ` at `j_k ∓ h`, `h = 1e-6 max(1, j_k)`.
    pub left: f64,
    pub right: f64,
    /// Central difference `(ψ(j+h) − ψ(j−h)) / 2h`.
    pub derivative: f64,
    /// `max |ψ(j_k ± π/2)|`, the local oscillation amplitude.
    pub scale: f64,
}

impl SimplicityRow {
    pub fn simple(&self) -> bool {
        self.left * self.right < 0.0 && self.derivative.abs() > 1e-8 * self.scale
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplicityReport {
    pub a: f64,
    pub c: f64,
    pub d: f64,
    pub rows: Vec<SimplicityRow>,
    /// Indices `k` whose zero is not certified simple.
    pub failures: Vec<usize>,
}

/// Sign change and nonvanishing slope at each of `j_1..j_{k_max}`.
pub fn simplicity<T: Real>(a: T, c: T, d: T, k_max: usize) -> Result<SimplicityReport> {
    if k_max == 0 {
        bail!(Precondition, "k_max must be at least 1");
    }
    let spec = ComboSpec::new(a, c, d)?;
    let zeros = combo_zeros_range(&spec, k_max)?;
    let mut rows = Vec::with_capacity(k_max);
    for (i, &j) in zeros.iter().enumerate() {
        let h = T::lit(1e-6) * j.max(T::one());
        let (l, r) = (psi_eval(&spec, j - h)?, psi_eval(&spec, j + h)?);
        let quarter = T::FRAC_PI_2();
        let scale = psi_eval(&spec, j + quarter)?.abs().max(psi_eval(&spec, (j - quarter).max(T::zero()))?.abs());
        rows.push(SimplicityRow {
            k: i + 1,
            zero: j.to_f64_lossy(),
            left: l.to_f64_lossy(),
            right: r.to_f64_lossy(),
            derivative: ((r - l) / (T::lit(2.0) * h)).to_f64_lossy(),
            scale: scale.to_f64_lossy(),
        });
    }
    let failures = rows.iter().filter(|r| !r.simple()).map(|r| r.k).collect();
    Ok(SimplicityReport { a: a.to_f64_lossy(), c: spec.c().to_f64_lossy(), d: spec.d().to_f64_lossy(), rows, failures })
}

/// [`simplicity`] over a grid, in parallel, in grid order.
pub fn lemma_simplicity_check<T: Real>(grid: &[(T, T, T)], k_max: usize) -> Result<Vec<SimplicityReport>> {
    grid.par_iter().map(|&(a, c, d)| simplicity(a, c, d, k_max)).collect()
}

/// Worst-case figures of the zero solver's structural properties at one
/// `(a, c, d)` for `|k| ≤ k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPropertyReport {
    pub a: f64,
    pub c: f64,
    pub d: f64,
    /// `max |c G_a(j_k) + d j_k G_{a+1}(j_k)|` over `k = ±1..±k_max`.
    pub max_residual: f64,
    /// `max |j_{-k}(a,c,d) + j_k(a,c,-d)| / max(1, |j|)`.
    pub parity_error: f64,
    /// `max |j_k(a,c,d) − j_k(a,tc,td)| / max(1, |j|)` for
    /// `t ∈ {-2.5, 0.3, 7}`.
    pub scale_error: f64,
    pub all_simple: bool,
    /// Strictly increasing in `k` across both signs.
    pub ordered: bool,
    /// For `cd > 0`: `j_k` lies between the `k`-th zeros of `J_a` and
    /// `J_{a+1}`. `None` otherwise.
    pub interlaced: Option<bool>,
}

impl ZeroPropertyReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual <= tol
            && self.parity_error <= tol
            && self.scale_error <= tol
            && self.all_simple
            && self.ordered
            && self.interlaced != Some(false)
    }
}

pub fn zero_properties<T: Real>(a: T, c: T, d: T, k_max: usize) -> Result<ZeroPropertyReport> {
    if k_max == 0 {
        bail!(Precondition, "k_max must be at least 1");
    }
    let spec = ComboSpec::new(a, c, d)?;
    let pos = combo_zeros_range(&spec, k_max)?;
    let neg = combo_zeros_negative(&spec, k_max)?;
    let mut max_residual = T::zero();
    for &x in pos.iter().chain(&neg) {
        max_residual = max_residual.max(psi_eval(&spec, x)?.abs());
    }
    let mirror = ComboSpec::new(a, spec.c(), -spec.d())?;
    let mirror_pos = combo_zeros_range(&mirror, k_max)?;
    let mut parity_error = T::zero();
    for (m, nk) in neg.iter().enumerate() {
        let k = m + 1;
        let want = if spec.vanishes_at_origin() {
            if k == 1 {
                T::zero()
            } else {
                -mirror_pos[k - 2]
            }
        } else {
            -mirror_pos[k - 1]
        };
        parity_error = parity_error.max((*nk - want).abs() / nk.abs().max(T::one()));
    }
    let mut scale_error = T::zero();
    for t in [-2.5, 0.3, 7.0] {
        let t = T::lit(t);
        let scaled = ComboSpec::new(a, t * c, t * d)?;
        for (k, &x) in pos.iter().enumerate().step_by(7) {
            let y = combo_zero(&scaled, ZeroIndex::new(k as i64 + 1)?)?;
            scale_error = scale_error.max((x - y).abs() / x.abs().max(T::one()));
        }
    }
    let simple = simplicity(a, c, d, k_max)?.failures.is_empty();
    let ordered = neg.windows(2).all(|w| w[1] < w[0]) && pos.windows(2).all(|w| w[0] < w[1]) && neg[0] < pos[0];
    let interlaced = if spec.c() * spec.d() > T::zero() {
        let ja = combo_zeros_range(&ComboSpec::new(a, T::one(), T::zero())?, k_max)?;
        let jb = combo_zeros_range(&ComboSpec::new(a + T::one(), T::one(), T::zero())?, k_max)?;
        Some((0..k_max).all(|i| ja[i] < pos[i] && pos[i] < jb[i]))
    } else {
        None
    };
    Ok(ZeroPropertyReport {
        a: a.to_f64_lossy(),
        c: spec.c().to_f64_lossy(),
        d: spec.d().to_f64_lossy(),
        max_residual: max_residual.to_f64_lossy(),
        parity_error: parity_error.to_f64_lossy(),
        scale_error: scale_error.to_f64_lossy(),
        all_simple: simple,
        ordered,
        interlaced,
    })
}

/// `count` seeded tuples with `a ∈ (-0.95, 10)` and `(c, d)` in
/// `[-3, 3]^2`.
pub fn zero_property_grid(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(-0.95..10.0);
            let mut cd = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            if cd == (0.0, 0.0) {
                cd.0 = 1.0;
            }
            (a, cd.0, cd.1)
        })
        .collect()
}

/// [`zero_properties`] over a grid, in parallel, in grid order.
pub fn zero_property_suite<T: Real>(grid: &[(T, T, T)], k_max: usize) -> Result<Vec<ZeroPropertyReport>> {
    grid.par_iter().map(|&(a, c, d)| zero_properties(a, c, d, k_max)).collect()
}
