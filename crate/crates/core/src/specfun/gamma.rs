//! Gamma function for positive real argument (Lanczos, g = 7, 9 terms).

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection keeps the Lanczos sum in its accurate range
        let pi = T::PI();
        return pi.ln() - (pi * x).sin().ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::TAU()).ln() + (z + half) * t.ln() - t + acc.ln()
}

/// Lanczos sum evaluated without logarithms; `None` on overflow.
fn gamma_direct<T: Real>(x: T) -> Option<T> {
    let half = T::lit(0.5);
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    // split the power so t^(z+1/2) alone never overflows early
    let root = t.powf((z + half) / T::lit(2.0));
    let v = T::TAU().sqrt() * (root * (-t).exp()) * root * acc;
    (v.is_finite() && v > T::zero()).then_some(v)
}

/// `Γ(x)` for `x > 0`.
pub fn gamma<T: Real>(x: T) -> T {
    // exact on small positive integers, which the tests and G_a(0) lean on
    if x == x.floor() && x >= T::one() && x <= T::lit(20.0) {
        let mut f = T::one();
        let mut k = T::lit(2.0);
        while k < x {
            f = f * k;
            k = k + T::one();
        }
        return f;
    }
    if x >= T::lit(0.5) {
        if let Some(v) = gamma_direct(x) {
            return v;
        }
    }
    ln_gamma(x).exp()
}
