use std::f64::consts::PI;

use ortho_sing::jacobi_spectra::{all_zeros, scale_zeros, zeros_near, JacobiMatrix};
use ortho_sing::measure::{stieltjes_recurrence, GeneralizedJacobiMeasure, RecurrenceTable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Measure = GeneralizedJacobiMeasure<f64>;

fn chebyshev(n: usize) -> RecurrenceTable<f64> {
    stieltjes_recurrence(&Measure::chebyshev(), n).unwrap()
}

#[test]
fn chebyshev_zeros_closed_form() {
    let rec = chebyshev(4);
    let z = all_zeros(&rec, 4).unwrap();
    for (i, &k) in [7.0, 5.0, 3.0, 1.0].iter().enumerate() {
        assert!((z[i] - (k * PI / 8.0).cos()).abs() < 1e-14);
    }
}

#[test]
fn legendre_and_abs_weight_at_degree_two() {
    let leg = stieltjes_recurrence(&Measure::legendre(), 2).unwrap();
    let z = all_zeros(&leg, 2).unwrap();
    let r = 1.0 / 3f64.sqrt();
    assert!((z[0] + r).abs() < 1e-15 && (z[1] - r).abs() < 1e-15);
    let abs = stieltjes_recurrence(&Measure::abs_power(1.0).unwrap(), 2).unwrap();
    let z = all_zeros(&abs, 2).unwrap();
    let r = 0.5f64.sqrt();
    assert!((z[0] + r).abs() < 1e-15 && (z[1] - r).abs() < 1e-15);
}

#[test]
fn window_at_chebyshev_center() {
    let rec = chebyshev(100);
    let z = zeros_near(&rec, 100, 0.0, 2).unwrap();
    assert!(!z.center_is_zero());
    let want = |j: f64| ((2.0 * j - 1.0) * PI / 200.0).cos();
    // zeros above 0 in increasing order: cos(99 pi/200), cos(97 pi/200)
    assert!((z.get(1).unwrap() - want(50.0)).abs() < 1e-14);
    assert!((z.get(2).unwrap() - want(49.0)).abs() < 1e-14);
    assert!((z.get(-1).unwrap() - want(51.0)).abs() < 1e-14);
    assert!((z.get(-2).unwrap() - want(52.0)).abs() < 1e-14);
    assert_eq!(z.zeros().len(), 4);
}

#[test]
fn odd_degree_even_measure_snaps_center() {
    let rec = stieltjes_recurrence(&Measure::abs_power(1.0).unwrap(), 101).unwrap();
    let z = zeros_near(&rec, 101, 0.0, 3).unwrap();
    assert!(z.center_is_zero());
    let s = scale_zeros(&z);
    assert_eq!(s.get(-1), Some(0.0));
    assert!(s.get(-2).unwrap() < 0.0 && s.get(1).unwrap() > 0.0);
}

#[test]
fn window_matches_full_spectrum() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let measures = [
        Measure::chebyshev(),
        Measure::legendre(),
        Measure::abs_power(1.0).unwrap(),
        Measure::abs_power(-0.5).unwrap(),
        Measure::jacobi(2.0, -0.4).unwrap(),
    ];
    let tables: Vec<_> = measures.iter().map(|m| stieltjes_recurrence(m, 160).unwrap()).collect();
    for _ in 0..20 {
        let rec = &tables[rng.gen_range(0..tables.len())];
        let n = rng.gen_range(5..=160);
        let x0 = rng.gen_range(-0.95..0.95);
        let count = rng.gen_range(1..=4);
        let full = all_zeros(rec, n).unwrap();
        let near = zeros_near(rec, n, x0, count).unwrap();
        let split = full.partition_point(|&z| z <= x0);
        for (&k, &x) in near.zeros() {
            let idx = if k < 0 { split as i64 + k } else { split as i64 + k - 1 };
            assert!((full[idx as usize] - x).abs() < 1e-12, "n={n} x0={x0} k={k}");
        }
        let left = split.min(count);
        let right = (n - split).min(count);
        assert_eq!(near.zeros().len(), left + right);
    }
}

#[test]
fn consecutive_degrees_interlace() {
    for m in [Measure::legendre(), Measure::abs_power(1.0).unwrap(), Measure::abs_power(-0.7).unwrap()] {
        let rec = stieltjes_recurrence(&m, 201).unwrap();
        let mut prev = all_zeros(&rec, 1).unwrap();
        for n in 2..=200 {
            let cur = all_zeros(&rec, n).unwrap();
            for (i, &p) in prev.iter().enumerate() {
                assert!(cur[i] < p && p < cur[i + 1], "n={n}");
            }
            prev = cur;
        }
    }
}

#[test]
fn sturm_count_agrees_with_spectrum() {
    let rec = stieltjes_recurrence(&Measure::abs_power(2.0).unwrap(), 80).unwrap();
    let jm = JacobiMatrix::from_table(&rec, 80).unwrap();
    let z = all_zeros(&rec, 80).unwrap();
    for i in 0..=40 {
        let t = -1.0 + i as f64 / 20.0;
        assert_eq!(jm.count_below(t), z.partition_point(|&v| v < t));
    }
    assert!((jm.eigenvalue(0).unwrap() - z[0]).abs() < 1e-13);
    assert_eq!(jm.offdiag().len(), 79);
}

#[test]
fn scaled_spacing_is_bounded_near_singularity() {
    let rec = stieltjes_recurrence(&Measure::abs_power(1.0).unwrap(), 2000).unwrap();
    for n in [100, 101, 500, 999, 2000] {
        let s = scale_zeros(&zeros_near(&rec, n, 0.0, 7).unwrap());
        for k in -5..=5 {
            let g = s.zero_gap(k).unwrap();
            assert!(g > 0.1 && g < 10.0, "n={n} k={k}: {g}");
        }
    }
}

#[test]
fn scaling_arithmetic() {
    let rec = RecurrenceTable::jacobi(0.0_f64, 0.0, 30).unwrap();
    let z = zeros_near(&rec, 30, 0.5, 2).unwrap();
    let s = scale_zeros(&z);
    let x1 = z.get(1).unwrap();
    assert_eq!(s.get(1).unwrap(), 30.0 / 0.75f64.sqrt() * (x1 - 0.5));
    assert_eq!(s.get(0), Some(0.0));
}
