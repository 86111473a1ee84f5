//! One function per subcommand; each returns the CSV, summary lines and
//! whether a verification check failed.

use rayon::prelude::*;

use ortho_sing::asymptotics::{asym_pn_away_scaled, asym_pn_endpoint_scaled, asym_pn_near_scaled, PhaseContext, Side};
use ortho_sing::bessel_zeros::{combo_zeros_negative, combo_zeros_range, ComboSpec};
use ortho_sing::jacobi_spectra::{all_zeros, scale_zeros, zeros_near};
use ortho_sing::measure::stieltjes_recurrence;
use ortho_sing::verify::{
    check_inequality, gap_limit, gap_limit_grid, hypothesis_grid, simplicity, target_subsequence, theorem1_with_table,
    zero_rows, InequalityCase, SpacingReport, Verdict,
};
use ortho_sing::{Measure, Recurrence};

use crate::config::{require, ExperimentConfig, Region, SideSpec};
use crate::output::{num, Cell, Csv};
use crate::CliError;

pub struct Outcome {
    pub csv: Csv,
    pub summary: Vec<String>,
    pub violation: bool,
}

impl Outcome {
    fn ok(csv: Csv, summary: Vec<String>) -> Self {
        Self { csv, summary, violation: false }
    }
}

fn table(measure: &Measure, n: usize) -> Result<Recurrence, CliError> {
    Ok(stieltjes_recurrence(measure, n)?)
}

fn convergence_meta(csv: &mut Csv, t: &Recurrence) {
    let c = t.convergence();
    csv.meta(format!("convergence degree={} max_change={} refinements={}", c.degree, num(c.max_change), c.refinements));
}

pub fn bessel_zeros(a: f64, c: f64, d: f64, k_max: usize, negative: bool) -> Result<Outcome, CliError> {
    if k_max == 0 {
        return Err(CliError::Usage("--kmax must be at least 1".into()));
    }
    let spec = ComboSpec::new(a, c, d)?;
    let mut rows: Vec<(i64, f64)> = Vec::new();
    if negative {
        let neg = combo_zeros_negative(&spec, k_max)?;
        rows.extend(neg.iter().enumerate().rev().map(|(i, &x)| (-(i as i64) - 1, x)));
    }
    rows.extend(combo_zeros_range(&spec, k_max)?.into_iter().enumerate().map(|(i, x)| (i as i64 + 1, x)));
    let mut csv = Csv::new(&["k", "j_k", "gap_to_previous"]);
    csv.meta(format!("a={} c={} d={}", num(a), num(c), num(d)));
    let mut prev: Option<f64> = None;
    for (k, x) in rows {
        csv.row(vec![k.into(), x.into(), prev.map(|p| x - p).into()]);
        prev = Some(x);
    }
    Ok(Outcome::ok(csv, vec![format!("{k_max} zeros of c J_a + d J_(a+1) at a={a}")]))
}

pub fn recurrence(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let block = require(&cfg.recurrence, "recurrence")?;
    let t = table(&cfg.measure()?, block.n)?;
    let mut csv = Csv::new(&["k", "a_k", "b_k"]);
    convergence_meta(&mut csv, &t);
    for k in 0..block.n {
        csv.row(vec![k.into(), t.diag()[k].into(), t.b(k).into()]);
    }
    let c = t.convergence();
    Ok(Outcome::ok(
        csv,
        vec![format!("{} coefficients, max change {:.3e} at degree {}", block.n, c.max_change, c.degree)],
    ))
}

pub fn zeros(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let block = require(&cfg.zeros, "zeros")?;
    let t = table(&cfg.measure()?, block.n)?;
    let mut csv;
    match block.center {
        None => {
            csv = Csv::new(&["k", "x_k"]);
            convergence_meta(&mut csv, &t);
            for (i, x) in all_zeros(&t, block.n)?.into_iter().enumerate() {
                csv.row(vec![(i + 1).into(), x.into()]);
            }
        }
        Some(x0) => {
            let count = block.count.unwrap_or(5).min(block.n);
            let set = zeros_near(&t, block.n, x0, count)?;
            let frame = scale_zeros(&set);
            csv = Csv::new(&["k", "x_k", "scaled"]);
            convergence_meta(&mut csv, &t);
            csv.meta(format!("center={}", num(x0)));
            for (&k, &x) in set.zeros() {
                csv.row(vec![k.into(), x.into(), frame.get(k).into()]);
            }
        }
    }
    Ok(Outcome::ok(csv, vec![format!("zeros of p_{}", block.n)]))
}

fn summary_lines(reports: &[SpacingReport], csv: &mut Csv) -> (Vec<String>, bool) {
    let mut lines = Vec::new();
    let mut failed = false;
    for r in reports {
        let residue = r.residue.map_or("all".to_string(), |m| m.to_string());
        let line = format!(
            "summary nu={} k={} residue={} final_error={} tolerance={} decay_exponent={} verdict={}",
            r.nu,
            r.k,
            residue,
            num(r.final_error()),
            num(r.tolerance),
            num(r.decay_exponent),
            r.verdict.as_str()
        );
        csv.trailer(line.clone());
        lines.push(line);
        failed |= r.verdict == Verdict::Failed;
    }
    (lines, failed)
}

pub fn spacing(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let block = require(&cfg.spacing, "spacing")?;
    if block.k_min > block.k_max {
        return Err(CliError::Usage(format!("empty k range {}..={}", block.k_min, block.k_max)));
    }
    let ns = block.degrees.expand()?;
    let n_max = *ns.iter().max().expect("nonempty");
    let measure = cfg.measure()?;
    let t = table(&measure, n_max + 1)?;
    let ctx = PhaseContext::new(measure)?;
    let rows: Vec<_> = ns
        .par_iter()
        .map(|&n| zero_rows(&t, &ctx, block.nu, n, block.k_min, block.k_max))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = Csv::new(&["n", "k", "zero", "scaled", "predicted", "abs_err"]);
    convergence_meta(&mut csv, &t);
    csv.meta(format!("nu={} x_nu={}", block.nu, num(ctx.measure().singularity(block.nu)?.position())));
    for r in rows.iter().flatten() {
        csv.row(vec![r.n.into(), r.k.into(), r.zero.into(), r.scaled.into(), r.predicted.into(), r.abs_error.into()]);
    }
    let reports = theorem1_with_table(&t, &ctx, "config", block.nu, block.gap_k, &ns, block.tolerance)?;
    let (summary, _) = summary_lines(&reports, &mut csv);
    Ok(Outcome::ok(csv, summary))
}

pub fn theorem1(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let block = require(&cfg.theorem1, "theorem1")?;
    let measure = cfg.measure()?;
    let ctx = PhaseContext::new(measure.clone())?;
    let ns = match &block.target {
        None => block.degrees.expand()?,
        Some(tg) => {
            let hits = target_subsequence(&ctx, block.nu, tg.c, tg.d, tg.n_max)?;
            let ns: Vec<usize> = hits.iter().map(|h| h.n).filter(|&n| n >= tg.n_min).collect();
            if ns.is_empty() {
                return Err(CliError::Usage(format!("no record degrees in {}..={}", tg.n_min, tg.n_max)));
            }
            ns
        }
    };
    let n_max = *ns.iter().max().expect("nonempty");
    let t = table(&measure, n_max + 1)?;
    let reports = theorem1_with_table(&t, &ctx, "config", block.nu, block.k, &ns, block.tolerance)?;
    let mut csv = Csv::new(&["residue", "n", "measured", "predicted", "abs_error"]);
    convergence_meta(&mut csv, &t);
    csv.meta(format!("nu={} k={} tolerance={}", block.nu, block.k, num(block.tolerance)));
    for r in &reports {
        for row in &r.rows {
            let residue = r.residue.map_or(Cell::Empty, |m| m.into());
            csv.row(vec![residue, row.n.into(), row.measured.into(), row.predicted.into(), row.abs_error.into()]);
        }
    }
    let (summary, failed) = summary_lines(&reports, &mut csv);
    Ok(Outcome { csv, summary, violation: failed })
}

struct SuiteRow {
    suite: &'static str,
    case: String,
    a: f64,
    c: f64,
    d: f64,
    k_max: usize,
    passed: bool,
    worst: f64,
    violations: usize,
}

pub fn verify_sturm(cfg: &ExperimentConfig, seed: u64) -> Result<Outcome, CliError> {
    let block = require(&cfg.verify, "verify")?;
    let cases: Vec<InequalityCase> = match &block.cases {
        None => InequalityCase::CONVEXITY.into_iter().chain(InequalityCase::COMPARISON).collect(),
        Some(ids) => ids
            .iter()
            .map(|id| InequalityCase::from_id(id).ok_or_else(|| CliError::Usage(format!("unknown case `{id}`"))))
            .collect::<Result<_, _>>()?,
    };
    let mut work: Vec<(InequalityCase, f64, f64, f64)> = Vec::new();
    for &case in &cases {
        work.extend(hypothesis_grid(case, block.count, seed));
    }
    let mut rows: Vec<SuiteRow> = work
        .par_iter()
        .map(|&(case, a, c, d)| {
            let rep = check_inequality(case, a, c, d, block.k_max)?;
            let worst = rep.rows.iter().map(|r| r.margin()).fold(f64::INFINITY, f64::min);
            let suite = if InequalityCase::CONVEXITY.contains(&case) { "convexity" } else { "comparison" };
            Ok(SuiteRow {
                suite,
                case: case.id().into(),
                a,
                c,
                d,
                k_max: block.k_max,
                passed: rep.passed(),
                worst,
                violations: rep.violations.len(),
            })
        })
        .collect::<Result<_, ortho_sing::Error>>()?;
    if let Some(lim) = &block.limit {
        let probes = lim.probes.clone();
        let grid = gap_limit_grid(lim.count, seed);
        let more: Vec<SuiteRow> = grid
            .par_iter()
            .map(|&(a, c, d)| {
                let rep = gap_limit(a, c, d, &probes, lim.bound)?;
                let (k, dev) = *rep.deviations.last().expect("probes nonempty");
                Ok(SuiteRow {
                    suite: "limit",
                    case: "gap-limit".into(),
                    a,
                    c,
                    d,
                    k_max: k,
                    passed: rep.passed,
                    worst: dev,
                    violations: usize::from(!rep.passed),
                })
            })
            .collect::<Result<_, ortho_sing::Error>>()?;
        rows.extend(more);
    }
    if let Some(simp) = &block.simplicity {
        let grid = gap_limit_grid(simp.count, seed ^ 0x5eed);
        let more: Vec<SuiteRow> = grid
            .par_iter()
            .map(|&(a, c, d)| {
                let rep = simplicity(a, c, d, simp.k_max)?;
                let worst = rep.rows.iter().map(|r| r.derivative.abs() / r.scale).fold(f64::INFINITY, f64::min);
                Ok(SuiteRow {
                    suite: "simplicity",
                    case: "simple-zeros".into(),
                    a,
                    c,
                    d,
                    k_max: simp.k_max,
                    passed: rep.failures.is_empty(),
                    worst,
                    violations: rep.failures.len(),
                })
            })
            .collect::<Result<_, ortho_sing::Error>>()?;
        rows.extend(more);
    }
    let mut csv = Csv::new(&["suite", "case", "a", "c", "d", "k_max", "passed", "worst", "violations"]);
    csv.meta(format!("seed={seed}"));
    csv.meta(
        "worst: min rhs-lhs (inequalities), |gap-pi| at the last probe (limit), min |psi'|/amplitude (simplicity)",
    );
    let mut summary = Vec::new();
    let mut failed = false;
    let mut tally: Vec<(String, usize, usize)> = Vec::new();
    for r in &rows {
        csv.row(vec![
            r.suite.into(),
            r.case.as_str().into(),
            r.a.into(),
            r.c.into(),
            r.d.into(),
            r.k_max.into(),
            r.passed.into(),
            r.worst.into(),
            r.violations.into(),
        ]);
        failed |= !r.passed;
        match tally.iter_mut().find(|t| t.0 == r.case) {
            Some(t) => {
                t.1 += 1;
                t.2 += usize::from(!r.passed);
            }
            None => tally.push((r.case.clone(), 1, usize::from(!r.passed))),
        }
    }
    for (case, total, bad) in tally {
        let line = format!("{case}: {} ({} of {total} tuples failed)", if bad == 0 { "PASS" } else { "FAIL" }, bad);
        csv.trailer(line.clone());
        summary.push(line);
    }
    Ok(Outcome { csv, summary, violation: failed })
}

pub fn asym_compare(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let block = require(&cfg.asym, "asym")?;
    if block.points < 2 || block.x_min.partial_cmp(&block.x_max) != Some(std::cmp::Ordering::Less) {
        return Err(CliError::Usage("asym needs points >= 2 and x_min < x_max".into()));
    }
    let ns = block.degrees.expand()?;
    let n_max = *ns.iter().max().expect("nonempty");
    let measure = cfg.measure()?;
    let t = table(&measure, n_max)?;
    let ctx = PhaseContext::new(measure)?;
    let x_nu = if block.region == Region::Near { Some(ctx.measure().singularity(block.nu)?.position()) } else { None };
    // the near formula is two-sided; the singular point itself is skipped
    let xs: Vec<f64> = (0..block.points)
        .map(|i| block.x_min + (block.x_max - block.x_min) * i as f64 / (block.points - 1) as f64)
        .filter(|&x| Some(x) != x_nu)
        .collect();
    let eval = |n: usize, x: f64| -> Result<(f64, f64), CliError> {
        let rec = t.monic_scaled(n, x)?;
        let asym = match block.region {
            Region::Away => asym_pn_away_scaled(&ctx, block.nu, n, x, block.delta)?,
            Region::Endpoint => asym_pn_endpoint_scaled(&ctx, n, x, block.delta)?,
            Region::Near => {
                let side = match block.side {
                    Some(SideSpec::Left) => Side::Left,
                    Some(SideSpec::Right) => Side::Right,
                    None if x < x_nu.expect("near region") => Side::Left,
                    None => Side::Right,
                };
                asym_pn_near_scaled(&ctx, block.nu, n, x, side, block.delta)?
            }
        };
        Ok((rec, asym))
    };
    let values: Vec<Vec<(f64, f64)>> = ns
        .par_iter()
        .map(|&n| xs.iter().map(|&x| eval(n, x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut csv = Csv::new(&["n", "x", "pn_recurrence", "pn_asymptotic", "ratio"]);
    csv.meta(format!("region={:?} nu={} delta={}", block.region, block.nu, num(block.delta)).to_lowercase());
    csv.meta("values are 2^n pi_n (monic, rescaled to avoid underflow)");
    let mut summary = Vec::new();
    let mut prev_dev: Option<f64> = None;
    for (&n, vals) in ns.iter().zip(&values) {
        let scale = vals.iter().map(|v| v.1.abs()).fold(0.0, f64::max);
        let mut sup_ratio = 0.0f64;
        let mut sup_dev = 0.0f64;
        for (&x, &(rec, asym)) in xs.iter().zip(vals) {
            csv.row(vec![n.into(), x.into(), rec.into(), asym.into(), (rec / asym).into()]);
            sup_dev = sup_dev.max((rec - asym).abs() / scale);
            if asym.abs() >= 0.1 * scale {
                sup_ratio = sup_ratio.max((rec / asym - 1.0).abs());
            }
        }
        let decay = prev_dev.map_or(String::new(), |p| format!(" decay_factor={}", num(p / sup_dev)));
        let line = format!("summary n={n} sup_ratio_dev={} sup_scaled_dev={}{decay}", num(sup_ratio), num(sup_dev));
        csv.trailer(line.clone());
        summary.push(line);
        prev_dev = Some(sup_dev);
    }
    Ok(Outcome::ok(csv, summary))
}
