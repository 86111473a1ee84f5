//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use ortho_sing::asymptotics::{asym_pn_away, asym_pn_away_scaled, PhaseContext};
use ortho_sing::jacobi_spectra::{all_zeros, scale_zeros, zeros_near, JacobiMatrix};
use ortho_sing::measure::stieltjes_recurrence;
use ortho_sing::verify::{
    gap_limit_grid, hypothesis_grid, theorem1_experiment, theorem2_suite, theorem3_suite, theorem4_suite,
    zero_property_grid, zero_property_suite, InequalityCase,
};
use ortho_sing::Measure;

const J0_1: f64 = 2.404825557695773;
const J0_GAP_12: f64 = 5.520078110286311 - J0_1;
const J1_GAP_12: f64 = 7.015586669815619 - 3.831705970207512;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

type Check = fn() -> Result<Verdict, ortho_sing::Error>;

fn chebyshev_closed_form() -> Result<Verdict, ortho_sing::Error> {
    let t = stieltjes_recurrence(&Measure::chebyshev(), 500)?;
    let mut coef_err = 0.0f64;
    for k in 0..500 {
        let b = match k {
            0 => PI,
            1 => 0.5,
            _ => 0.25,
        };
        coef_err = coef_err.max(t.diag()[k].abs()).max((t.b(k) - b).abs());
    }
    let mut zero_err = 0.0f64;
    for n in [4, 50, 500] {
        for (i, x) in all_zeros(&t, n)?.into_iter().enumerate() {
            // ascending order: x_i = cos((2(n-i)-1) pi / 2n)
            let want = ((2 * (n - i) - 1) as f64 * PI / (2 * n) as f64).cos();
            zero_err = zero_err.max((x - want).abs());
        }
    }
    Ok(verdict(
        coef_err <= 1e-11 && zero_err <= 1e-10,
        format!("max coefficient error {coef_err:.2e}, max zero error {zero_err:.2e}"),
    ))
}

fn chebyshev_asymptotic_exactness() -> Result<Verdict, ortho_sing::Error> {
    let ctx = PhaseContext::new(Measure::chebyshev())?;
    let mut worst = 0.0f64;
    let mut count = 0;
    for line in include_str!("data/chebyshev_tn.csv").lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[0].parse().unwrap();
        let i = ((f[1].parse::<f64>().unwrap() + 1.0) * 51.0 - 1.0).round();
        let x = -1.0 + 2.0 * (i + 1.0) / 102.0;
        let want: f64 = f[2].parse().unwrap();
        let got = asym_pn_away(&ctx, 0, n, x, 1e-3)?;
        // relative to the sup norm 2^(1-n) of the monic polynomial
        worst = worst.max((got - want).abs() / 2f64.powi(1 - n as i32));
        count += 1;
    }
    Ok(verdict(worst <= 1e-12 && count == 202, format!("{count} points, max scaled error {worst:.2e}")))
}

fn legendre_clock_spacing() -> Result<Verdict, ortho_sing::Error> {
    let t = stieltjes_recurrence(&Measure::legendre(), 2000)?;
    let target = PI * 0.91f64.sqrt();
    let mut errs = Vec::new();
    for n in [500, 1000, 2000] {
        let frame = scale_zeros(&zeros_near(&t, n, 0.3, 4)?);
        let mut e = 0.0f64;
        for offset in -2..=2 {
            let gap = frame.zero_gap(offset).expect("four zeros per side") * 0.91f64.sqrt();
            e = e.max((gap - target).abs() / target);
        }
        errs.push(e);
    }
    let ok = errs[2] < 0.01 && errs[0] > errs[1] && errs[1] > errs[2];
    Ok(verdict(ok, format!("relative errors at n=500/1000/2000: {:.2e} {:.2e} {:.2e}", errs[0], errs[1], errs[2])))
}

fn abs_weight_headline() -> Result<Verdict, ortho_sing::Error> {
    let ns: Vec<usize> = (1..=10).flat_map(|i| [200 * i, 200 * i + 1]).collect();
    let reports = theorem1_experiment(&Measure::abs_power(1.0)?, "abs", 1, 1, &ns, 0.02 * J0_GAP_12)?;
    let even = reports.iter().find(|r| r.residue == Some(0)).expect("even class");
    let odd = reports.iter().find(|r| r.residue == Some(1)).expect("odd class");
    let (ge, go) = (even.rows.last().unwrap().measured, odd.rows.last().unwrap().measured);
    let (ee, eo) = ((ge - J0_GAP_12).abs() / J0_GAP_12, (go - J1_GAP_12).abs() / J1_GAP_12);
    // the limits are further apart than either measurement is from its own
    let separated = (go - ge).abs() > 2.0 * ((ge - J0_GAP_12).abs() + (go - J1_GAP_12).abs());
    Ok(verdict(
        ee < 0.02 && eo < 0.02 && separated,
        format!("n=2000 gap {ge:.6} ({ee:.2e}), n=2001 gap {go:.6} ({eo:.2e}), difference {:.4}", go - ge),
    ))
}

fn combo_zero_suite() -> Result<Verdict, ortho_sing::Error> {
    let grid = zero_property_grid(200, 2024);
    let reports = zero_property_suite(&grid, 50)?;
    let failed = reports.iter().filter(|r| !r.passed(1e-12)).count();
    let residual = reports.iter().map(|r| r.max_residual).fold(0.0, f64::max);
    let interlaced = reports.iter().filter(|r| r.interlaced.is_some()).count();
    Ok(verdict(
        failed == 0,
        format!("{failed} of 200 specs failed, max residual {residual:.2e}, {interlaced} interlacing checks"),
    ))
}

fn inequality_grid(cases: &[InequalityCase], seed: u64) -> Vec<(InequalityCase, f64, f64, f64)> {
    cases.iter().flat_map(|&c| hypothesis_grid(c, 50, seed)).collect()
}

fn convexity() -> Result<Verdict, ortho_sing::Error> {
    let reports = theorem2_suite(&inequality_grid(&InequalityCase::CONVEXITY, 6), 100)?;
    let bad: usize = reports.iter().map(|r| r.violations.len()).sum();
    Ok(verdict(bad == 0, format!("{} tuples, k <= 100, {bad} violations", reports.len())))
}

fn comparison() -> Result<Verdict, ortho_sing::Error> {
    let reports = theorem3_suite(&inequality_grid(&InequalityCase::COMPARISON, 7), 100)?;
    let bad: usize = reports.iter().map(|r| r.violations.len()).sum();
    let above_pi =
        reports.iter().filter(|r| r.case == InequalityCase::ComparisonI).all(|r| r.rows.iter().all(|row| row.rhs > PI));
    Ok(verdict(
        bad == 0 && above_pi,
        format!("{} tuples, k <= 100, {bad} violations, case (i) gaps all > pi: {above_pi}", reports.len()),
    ))
}

fn gap_limit() -> Result<Verdict, ortho_sing::Error> {
    let grid = gap_limit_grid(30, 8);
    let mixed = grid.iter().any(|g| g.1 * g.2 < 0.0) && grid.iter().any(|g| g.1 * g.2 > 0.0);
    let reports = theorem4_suite(&grid, &[10, 1000], 1e-4)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    let worst = reports.iter().map(|r| r.deviations[1].1).fold(0.0, f64::max);
    Ok(verdict(failed == 0 && mixed, format!("{failed} of 30 tuples failed, worst |gap - pi| at k=1000: {worst:.2e}")))
}

fn legendre_decay() -> Result<Verdict, ortho_sing::Error> {
    let m = Measure::legendre();
    let t = stieltjes_recurrence(&m, 200)?;
    let ctx = PhaseContext::new(m)?;
    let sup = |n: usize| -> Result<f64, ortho_sing::Error> {
        let mut s = 0.0f64;
        for i in 0..=400 {
            let x = -0.9 + 1.8 * i as f64 / 400.0;
            let a = asym_pn_away_scaled(&ctx, 0, n, x, 0.05)?;
            // deviation of the ratio measured against the envelope, finite at zeros
            s = s.max((t.monic_scaled(n, x)? - a).abs() / ctx.envelope_scaled(x));
        }
        Ok(s)
    };
    let (d100, d200) = (sup(100)?, sup(200)?);
    let ratio = d100 / d200;
    Ok(verdict((1.5..=2.5).contains(&ratio), format!("sup deviation {d100:.3e} -> {d200:.3e}, factor {ratio:.3}")))
}

fn endpoint_zero() -> Result<Verdict, ortho_sing::Error> {
    let t = stieltjes_recurrence(&Measure::legendre(), 2000)?;
    let largest = JacobiMatrix::from_table(&t, 2000)?.eigenvalue(1999)?;
    let scaled = 2000.0 * largest.acos();
    let err = (scaled - J0_1).abs() / J0_1;
    Ok(verdict(err < 0.01, format!("n arccos(x_n,n) = {scaled:.6}, relative error {err:.2e}")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 10] = [
        ("1 chebyshev closed form", chebyshev_closed_form, Duration::from_secs(10)),
        ("2 chebyshev asymptotic exactness", chebyshev_asymptotic_exactness, Duration::MAX),
        ("3 legendre clock spacing", legendre_clock_spacing, Duration::from_secs(120)),
        ("4 |x| even/odd spacing", abs_weight_headline, Duration::from_secs(300)),
        ("5 bessel-combination zero suite", combo_zero_suite, Duration::from_secs(60)),
        ("6 convexity inequalities", convexity, Duration::MAX),
        ("7 comparison inequalities", comparison, Duration::MAX),
        ("8 gap limit", gap_limit, Duration::MAX),
        ("9 legendre asymptotic decay", legendre_decay, Duration::MAX),
        ("10 endpoint zero", endpoint_zero, Duration::MAX),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(v) if elapsed <= budget => (v.ok, v.detail),
            Ok(v) => (false, format!("{} (over the {budget:?} budget)", v.detail)),
            Err(e) => (false, format!("error: {e}")),
        };
        println!("{} {name}: {detail} [{:.2}s]", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        failures += usize::from(!ok);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
