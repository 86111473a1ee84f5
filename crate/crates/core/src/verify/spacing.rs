//! Scaled zero spacing next to a singularity against the Bessel-zero
//! prediction, grouped into the residue classes of `n`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::asymptotics::{phase_phi_nu, predicted_spacing, predicted_zero, PhaseContext};
use crate::error::{bail, Result};
use crate::jacobi_spectra::{scale_zeros, zeros_near};
use crate::measure::{stieltjes_recurrence, GeneralizedJacobiMeasure, RecurrenceTable};
use crate::scalar::Real;

/// Allowed growth between consecutive errors in the last three points.
const MONOTONE_SLACK: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Failed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Converging => "converging",
            Self::Failed => "failed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingRow {
    pub n: usize,
    /// `a_{k+1,n} − a_{k,n}`.
    pub measured: f64,
    /// `j_{k+1} − j_k` with the constants of this `n`.
    pub predicted: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpacingReport {
    pub measure_id: String,
    pub nu: usize,
    pub k: i64,
    /// `n mod q` when the singular angle is `πp/q`.
    pub residue: Option<usize>,
    pub rows: Vec<SpacingRow>,
    pub tolerance: f64,
    pub verdict: Verdict,
    /// Least-squares slope `-d log|err| / d log n`; NaN with fewer than two
    /// positive errors.
    pub decay_exponent: f64,
}

impl SpacingReport {
    pub fn final_error(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.abs_error)
    }
}

/// Converging iff the error at the largest `n` is below `tolerance` and the
/// errors over the last three `n` grow by no more than 20% per step.
pub fn spacing_verdict(errors: &[f64], tolerance: f64) -> Verdict {
    let Some(&last) = errors.last() else { return Verdict::Failed };
    let tail = &errors[errors.len().saturating_sub(3)..];
    let monotone = tail.windows(2).all(|w| w[1] <= MONOTONE_SLACK * w[0] || w[1] <= tolerance * 1e-3);
    if last < tolerance && monotone {
        Verdict::Converging
    } else {
        Verdict::Failed
    }
}

fn decay_exponent(rows: &[SpacingRow]) -> f64 {
    let pts: Vec<(f64, f64)> =
        rows.iter().filter(|r| r.abs_error > 0.0).map(|r| ((r.n as f64).ln(), r.abs_error.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (num, den) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + (p.0 - mx) * (p.1 - my), b + (p.0 - mx).powi(2)));
    if den == 0.0 {
        f64::NAN
    } else {
        -num / den
    }
}

/// Measured gap `a_{k+1,n} − a_{k,n}` at `x_ν` (with `a_0 = 0`).
pub fn measured_gap<T: Real>(
    table: &RecurrenceTable<T>,
    ctx: &PhaseContext<T>,
    nu: usize,
    n: usize,
    k: i64,
) -> Result<T> {
    let x_nu = ctx.measure().singularity(nu)?.position();
    let reach = k.unsigned_abs().max((k + 1).unsigned_abs()) as usize + 1;
    let frame = scale_zeros(&zeros_near(table, n, x_nu, reach.min(n))?);
    match frame.gap(k) {
        Some(g) => Ok(g),
        None => bail!(Precondition, "p_{n} has too few zeros on one side of x_{nu} for k = {k}"),
    }
}

/// Runs the spacing experiment for one `(ν, k)` over `n_list`, building a
/// single recurrence table of length `max(n_list) + 1`.
pub fn theorem1_experiment<T: Real>(
    measure: &GeneralizedJacobiMeasure<T>,
    measure_id: &str,
    nu: usize,
    k: i64,
    n_list: &[usize],
    tolerance: f64,
) -> Result<Vec<SpacingReport>> {
    let Some(&n_max) = n_list.iter().max() else { bail!(Precondition, "empty n list") };
    if n_list.contains(&0) {
        bail!(Precondition, "degrees must be positive");
    }
    let table = stieltjes_recurrence(measure, n_max + 1)?;
    let ctx = PhaseContext::new(measure.clone())?;
    theorem1_with_table(&table, &ctx, measure_id, nu, k, n_list, tolerance)
}

/// As [`theorem1_experiment`] with a precomputed table and context.
pub fn theorem1_with_table<T: Real>(
    table: &RecurrenceTable<T>,
    ctx: &PhaseContext<T>,
    measure_id: &str,
    nu: usize,
    k: i64,
    n_list: &[usize],
    tolerance: f64,
) -> Result<Vec<SpacingReport>> {
    let q = ctx.measure().singularity(nu)?.angle_rational().map(|(_, q)| q as usize);
    let rows: Vec<SpacingRow> = n_list
        .par_iter()
        .map(|&n| {
            let measured = measured_gap(table, ctx, nu, n, k)?.to_f64_lossy();
            let predicted = predicted_spacing(ctx, nu, n, k)?.to_f64_lossy();
            Ok(SpacingRow { n, measured, predicted, abs_error: (measured - predicted).abs() })
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<Option<usize>, Vec<SpacingRow>> = BTreeMap::new();
    for row in rows {
        classes.entry(q.map(|q| row.n % q)).or_default().push(row);
    }
    Ok(classes
        .into_iter()
        .map(|(residue, mut rows)| {
            rows.sort_by_key(|r| r.n);
            let errors: Vec<f64> = rows.iter().map(|r| r.abs_error).collect();
            SpacingReport {
                measure_id: measure_id.to_string(),
                nu,
                k,
                residue,
                verdict: spacing_verdict(&errors, tolerance),
                decay_exponent: decay_exponent(&rows),
                tolerance,
                rows,
            }
        })
        .collect())
}

/// One zero of `p_n` near `x_ν` with its scaled position and prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRow {
    pub n: usize,
    pub k: i64,
    pub zero: f64,
    pub scaled: f64,
    pub predicted: f64,
    pub abs_error: f64,
}

/// `x_{k,n}`, `a_{k,n}` and `j_k` for every nonzero `k` in `k_lo..=k_hi`
/// present in the spectrum.
pub fn zero_rows<T: Real>(
    table: &RecurrenceTable<T>,
    ctx: &PhaseContext<T>,
    nu: usize,
    n: usize,
    k_lo: i64,
    k_hi: i64,
) -> Result<Vec<ZeroRow>> {
    if k_lo > k_hi {
        bail!(Precondition, "empty k range {k_lo}..={k_hi}");
    }
    let x_nu = ctx.measure().singularity(nu)?.position();
    let reach = (k_lo.unsigned_abs().max(k_hi.unsigned_abs()) as usize).clamp(1, n);
    let set = zeros_near(table, n, x_nu, reach)?;
    let frame = scale_zeros(&set);
    let mut out = Vec::new();
    for k in (k_lo..=k_hi).filter(|&k| k != 0) {
        let (Some(zero), Some(scaled)) = (set.get(k), frame.get(k)) else { continue };
        let predicted = predicted_zero(ctx, nu, n, k)?.to_f64_lossy();
        let scaled = scaled.to_f64_lossy();
        out.push(ZeroRow { n, k, zero: zero.to_f64_lossy(), scaled, predicted, abs_error: (scaled - predicted).abs() });
    }
    Ok(out)
}

/// A degree whose constants approach the target direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetHit {
    pub n: usize,
    /// Distance of `(c_n, d_n)` to `±(c, d)/|(c, d)|`.
    pub distance: f64,
}

/// Degrees `n ≤ n_max` at which `(cos, sin)(n arccos x_ν + φ_ν)` comes
/// closer to `±(c, d)` than at any smaller degree; along this record
/// sequence the spacing tends to that of `j_k(a, c, d)` when the angle is
/// an irrational multiple of `π`.
pub fn target_subsequence<T: Real>(
    ctx: &PhaseContext<T>,
    nu: usize,
    c: T,
    d: T,
    n_max: usize,
) -> Result<Vec<TargetHit>> {
    let norm = c.hypot(d);
    if !(norm > T::zero()) || !norm.is_finite() {
        bail!(Domain, "target (c, d) must be finite and nonzero");
    }
    let (tc, td) = ((c / norm).to_f64_lossy(), (d / norm).to_f64_lossy());
    let theta = ctx.measure().singularity(nu)?.angle().to_f64_lossy();
    let phi = phase_phi_nu(ctx, nu)?.to_f64_lossy();
    let mut best = f64::INFINITY;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let arg = (n as f64 * theta).rem_euclid(std::f64::consts::TAU) + phi;
        let (cn, dn) = (arg.cos(), arg.sin());
        let dist = (cn - tc).hypot(dn - td).min((cn + tc).hypot(dn + td));
        if dist < best {
            best = dist;
            out.push(TargetHit { n, distance: dist });
        }
    }
    Ok(out)
}
