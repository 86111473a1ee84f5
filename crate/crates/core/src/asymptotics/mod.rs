//! Leading-order strong asymptotics of the monic polynomials `pi_n` of a
//! generalized Jacobi measure, and the constants that predict the local zero
//! spacing at a singularity.
//!
//! Every `*_scaled` evaluator returns `2^n pi_n(x)`; the unscaled variants
//! multiply by `2^{-n}` and underflow to zero for large `n`.

use crate::bessel_zeros::{combo_zero, ComboSpec, ZeroIndex};
use crate::chebyshev::{fit, u_series};
use crate::error::{bail, Result};
use crate::measure::GeneralizedJacobiMeasure;
use crate::scalar::Real;
use crate::specfun::{bessel_j, bessel_j_prime};

/// Default half-width of the neighbourhoods of singularities and endpoints.
pub const DEFAULT_DELTA: f64 = 0.1;

/// Tail tolerance of the Chebyshev fit of `log h`.
const LOG_H_FIT_TOL: f64 = 1e-13;
const LOG_H_FIT_MAX_POINTS: usize = 4096;

/// Trigonometric constants below this many ulps are taken to be exact zeros.
const TRIG_FLUSH_ULPS: f64 = 64.0;

/// Which side of a singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `φ(z) = z + sqrt(z^2 - 1)` for real `|z| > 1`, on the branch with
/// `φ(z) ~ 2z` at infinity.
pub fn conformal_phi<T: Real>(z: T) -> Result<T> {
    if !(z.abs() > T::one()) {
        bail!(Domain, "exterior branch needs |z| > 1, got {z}");
    }
    Ok(z + z.signum() * ((z - T::one()) * (z + T::one())).sqrt())
}

/// Boundary value `φ₊(x) = exp(i arccos x)`, returned as its angle.
pub fn conformal_phi_boundary<T: Real>(x: T) -> Result<T> {
    if !(x.abs() <= T::one()) {
        bail!(Domain, "boundary value needs |x| <= 1, got {x}");
    }
    Ok(x.acos())
}

/// Chebyshev coefficients `γ_j` of `log h`.
fn log_h_coefficients<T: Real>(measure: &GeneralizedJacobiMeasure<T>) -> Result<Vec<T>> {
    let h = measure.h();
    if let Some(c) = h.log_chebyshev_coeffs() {
        return Ok(if c.is_empty() { vec![T::zero()] } else { c.to_vec() });
    }
    if h.is_one() {
        return Ok(vec![T::zero()]);
    }
    fit(|x| h.eval(x).ln(), T::tol(LOG_H_FIT_TOL), LOG_H_FIT_MAX_POINTS)
}

/// `D_∞ = 2^{-(α+β+Σλ)/2} exp(γ_0 / 2)`, where `γ_0 / 2` is the mean of
/// `log h` against the arcsine measure.
pub fn d_infinity<T: Real>(measure: &GeneralizedJacobiMeasure<T>) -> Result<T> {
    let gamma = log_h_coefficients(measure)?;
    Ok(d_infinity_from(measure, &gamma))
}

fn d_infinity_from<T: Real>(measure: &GeneralizedJacobiMeasure<T>, gamma: &[T]) -> T {
    let half = T::lit(0.5);
    T::lit(2.0).powf(-half * measure.total_exponent()) * (half * gamma[0]).exp()
}

/// A measure together with the quantities shared by every asymptotic
/// formula. Immutable once built.
#[derive(Debug, Clone)]
pub struct PhaseContext<T> {
    measure: GeneralizedJacobiMeasure<T>,
    log_h: Vec<T>,
    d_infinity: T,
}

impl<T: Real> PhaseContext<T> {
    pub fn new(measure: GeneralizedJacobiMeasure<T>) -> Result<Self> {
        let log_h = log_h_coefficients(&measure)?;
        let d_infinity = d_infinity_from(&measure, &log_h);
        Ok(Self { measure, log_h, d_infinity })
    }

    pub fn measure(&self) -> &GeneralizedJacobiMeasure<T> {
        &self.measure
    }

    /// `γ_0, γ_1, ...` with `log h = Σ γ_j T_j`.
    pub fn log_h_coefficients(&self) -> &[T] {
        &self.log_h
    }

    pub fn d_infinity(&self) -> T {
        self.d_infinity
    }

    /// Number of interior singularities `n_0`.
    pub fn singularity_count(&self) -> usize {
        self.measure.singularities().len()
    }

    /// `(sqrt(1-x^2)/π) PV∫ log h(t) / sqrt(1-t^2) dt/(t-x)`, evaluated as
    /// `sqrt(1-x^2) Σ_{j≥1} γ_j U_{j-1}(x)`.
    pub fn hilbert_log_h(&self, x: T) -> T {
        if self.log_h.len() < 2 {
            return T::zero();
        }
        (T::one() - x * x).sqrt() * u_series(&self.log_h[1..], x)
    }

    /// `D_∞ (1-x^2)^{-1/4} sqrt(2/w(x))`: the amplitude of `2^n pi_n`
    /// away from singularities.
    pub fn envelope_scaled(&self, x: T) -> T {
        let two = T::lit(2.0);
        self.d_infinity * (T::one() - x * x).powf(-T::lit(0.25)) * (two / self.measure.weight(x)).sqrt()
    }

    /// `x_0 = -1`, `x_1..x_{n_0}`, `x_{n_0+1} = 1`.
    fn node(&self, nu: usize) -> T {
        match nu {
            0 => -T::one(),
            nu if nu > self.singularity_count() => T::one(),
            nu => self.measure.singularities()[nu - 1].position(),
        }
    }

    /// `(x_ν, λ_ν, arccos x_ν)` for `ν = 1..n_0`.
    fn singular(&self, nu: usize) -> Result<(T, T, T)> {
        let s = self.measure.singularity(nu)?;
        Ok((s.position(), s.exponent(), s.angle()))
    }
}

fn check_interior<T: Real>(x: T) -> Result<()> {
    if !(x > -T::one() && x < T::one()) {
        bail!(Domain, "x must lie in (-1, 1), got {x}");
    }
    Ok(())
}

fn check_delta<T: Real>(delta: T) -> Result<()> {
    if !(delta > T::zero()) {
        bail!(Precondition, "delta must be positive, got {delta}");
    }
    Ok(())
}

/// `ψ_ν(x) = ½[(α+β+Σλ) arccos x − (α + Σ_{k>ν} λ_k) π] + ½ H(x)`, with `H`
/// the Hilbert-transform term of `log h`.
pub fn psi_nu<T: Real>(ctx: &PhaseContext<T>, nu: usize, x: T) -> Result<T> {
    check_interior(x)?;
    if nu > ctx.singularity_count() {
        bail!(Precondition, "phase index {nu} outside 0..={}", ctx.singularity_count());
    }
    let m = &ctx.measure;
    let right: T = m.singularities()[nu..].iter().map(|s| s.exponent()).sum();
    let half = T::lit(0.5);
    Ok(half * (m.total_exponent() * x.acos() - (m.alpha() + right) * T::PI() + ctx.hilbert_log_h(x)))
}

/// `φ_ν = ψ_ν(x_ν) − (1+λ_ν)π/4 + ½ arccos x_ν`.
pub fn phase_phi_nu<T: Real>(ctx: &PhaseContext<T>, nu: usize) -> Result<T> {
    let (x_nu, lambda, theta) = ctx.singular(nu)?;
    let quarter_pi = T::FRAC_PI_4();
    Ok(psi_nu(ctx, nu, x_nu)? - (T::one() + lambda) * quarter_pi + T::lit(0.5) * theta)
}

/// `n arccos x_ν` reduced modulo `2π`, exactly when the angle is a rational
/// multiple of `π`.
fn reduced_angle<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize) -> Result<T> {
    let s = ctx.measure.singularity(nu)?;
    Ok(match s.angle_rational() {
        Some((p, q)) => {
            let r = (n as u128 * p as u128) % (2 * q as u128);
            T::PI() * T::lit(r as f64) / T::lit(q as f64)
        }
        None => (T::from_usize_lossy(n) * s.angle()) % T::TAU(),
    })
}

/// `(c, d) = (cos, sin)(n arccos x_ν + φ_ν)`.
///
/// The left-side Bessel formula is evaluated with the phase `ψ_ν` as
/// defined here, which carries no extra `πλ_ν` shift; both sides therefore
/// share one pair of constants and one zero set `{j_k : k ∈ Z}`. `side` is
/// accepted so callers can be explicit about which zeros they compare.
pub fn trig_constants<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, side: Side) -> Result<(T, T)> {
    let _ = side;
    let arg = reduced_angle(ctx, nu, n)? + phase_phi_nu(ctx, nu)?;
    let flush = |v: T| if v.abs() < T::lit(TRIG_FLUSH_ULPS) * T::epsilon() { T::zero() } else { v };
    Ok((flush(arg.cos()), flush(arg.sin())))
}

/// `ComboSpec((λ_ν−1)/2, c, d)` whose zeros predict the scaled zeros of
/// `pi_n` on the given side of `x_ν`.
pub fn combo_spec<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, side: Side) -> Result<ComboSpec<T>> {
    let (_, lambda, _) = ctx.singular(nu)?;
    let (c, d) = trig_constants(ctx, nu, n, side)?;
    ComboSpec::new(T::lit(0.5) * (lambda - T::one()), c, d)
}

/// Predicted limit of the scaled zero `a_{k,n}`: `j_k(a, c, d)`, with
/// `j_0 = 0`.
pub fn predicted_zero<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, k: i64) -> Result<T> {
    let side = match k {
        0 => {
            ctx.singular(nu)?;
            return Ok(T::zero());
        }
        k if k > 0 => Side::Right,
        _ => Side::Left,
    };
    combo_zero(&combo_spec(ctx, nu, n, side)?, ZeroIndex::new(k)?)
}

/// Predicted limit of `a_{k+1,n} − a_{k,n}`.
pub fn predicted_spacing<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, k: i64) -> Result<T> {
    Ok(predicted_zero(ctx, nu, n, k + 1)? - predicted_zero(ctx, nu, n, k)?)
}

/// `2^n pi_n(x)` from the leading term away from singularities and
/// endpoints, for `x ∈ (x_ν + δ, x_{ν+1} − δ)`.
pub fn asym_pn_away_scaled<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, x: T, delta: T) -> Result<T> {
    check_delta(delta)?;
    if nu > ctx.singularity_count() {
        bail!(Precondition, "interval index {nu} outside 0..={}", ctx.singularity_count());
    }
    let (lo, hi) = (ctx.node(nu) + delta, ctx.node(nu + 1) - delta);
    if !(x > lo && x < hi) {
        bail!(Domain, "x = {x} is outside ({lo}, {hi})");
    }
    let theta = x.acos();
    let phase = (T::from_usize_lossy(n) + T::lit(0.5)) * theta + psi_nu(ctx, nu, x)? - T::FRAC_PI_4();
    Ok(ctx.envelope_scaled(x) * phase.cos())
}

pub fn asym_pn_away<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, x: T, delta: T) -> Result<T> {
    Ok(asym_pn_away_scaled(ctx, nu, n, x, delta)? * pow2_neg(n))
}

/// `2^n pi_n(x)` from the leading Bessel term for `x ∈ (1 − δ, 1)`.
pub fn asym_pn_endpoint_scaled<T: Real>(ctx: &PhaseContext<T>, n: usize, x: T, delta: T) -> Result<T> {
    check_delta(delta)?;
    let lo = (T::one() - delta).max(ctx.node(ctx.singularity_count()));
    if !(x > lo && x < T::one()) {
        bail!(Domain, "x = {x} is outside ({lo}, 1)");
    }
    let theta = x.acos();
    let alpha = ctx.measure.alpha();
    let s = T::from_usize_lossy(n) * theta;
    let arg = T::lit(0.5) * theta + psi_nu(ctx, ctx.singularity_count(), x)? + alpha * T::FRAC_PI_2();
    let bracket = arg.cos() * bessel_j(alpha, s)? + arg.sin() * bessel_j_prime(alpha, s)?;
    Ok(near_prefactor(ctx, x, s) * bracket)
}

pub fn asym_pn_endpoint<T: Real>(ctx: &PhaseContext<T>, n: usize, x: T, delta: T) -> Result<T> {
    Ok(asym_pn_endpoint_scaled(ctx, n, x, delta)? * pow2_neg(n))
}

/// `2^n pi_n(x)` from the leading Bessel term for `0 < |x − x_ν| < δ`, on
/// the requested side.
pub fn asym_pn_near_scaled<T: Real>(
    ctx: &PhaseContext<T>,
    nu: usize,
    n: usize,
    x: T,
    side: Side,
    delta: T,
) -> Result<T> {
    check_delta(delta)?;
    check_interior(x)?;
    let (x_nu, lambda, theta_nu) = ctx.singular(nu)?;
    let ok = match side {
        Side::Right => x > x_nu && x < x_nu + delta,
        Side::Left => x < x_nu && x > x_nu - delta,
    };
    if !ok {
        bail!(Domain, "x = {x} is not within {delta} on the {side:?} of x_{nu} = {x_nu}");
    }
    let theta = x.acos();
    let half = T::lit(0.5);
    let nf = T::from_usize_lossy(n);
    let xi = psi_nu(ctx, nu, x)? - (lambda + T::one()) * T::FRAC_PI_4() + reduced_angle(ctx, nu, n)? + half * theta;
    let (lo_order, hi_order) = (half * (lambda - T::one()), half * (lambda + T::one()));
    let bracket = match side {
        Side::Right => {
            let s = nf * (theta_nu - theta);
            xi.cos() * bessel_j(lo_order, s)? + xi.sin() * bessel_j(hi_order, s)?
        }
        Side::Left => {
            let s = nf * (theta - theta_nu);
            xi.cos() * bessel_j(lo_order, s)? - xi.sin() * bessel_j(hi_order, s)?
        }
    };
    Ok(near_prefactor(ctx, x, nf * (theta - theta_nu).abs()) * bracket)
}

pub fn asym_pn_near<T: Real>(ctx: &PhaseContext<T>, nu: usize, n: usize, x: T, side: Side, delta: T) -> Result<T> {
    Ok(asym_pn_near_scaled(ctx, nu, n, x, side, delta)? * pow2_neg(n))
}

/// `D_∞ (1-x^2)^{-1/4} sqrt(π s / w(x))`.
fn near_prefactor<T: Real>(ctx: &PhaseContext<T>, x: T, s: T) -> T {
    ctx.d_infinity * (T::one() - x * x).powf(-T::lit(0.25)) * (T::PI() * s / ctx.measure.weight(x)).sqrt()
}

fn pow2_neg<T: Real>(n: usize) -> T {
    T::lit(2.0).powi(-(n.min(i32::MAX as usize) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conformal_map() {
        assert_eq!(conformal_phi(1.25_f64).unwrap(), 2.0);
        assert_eq!(conformal_phi(-1.25_f64).unwrap(), -2.0);
        assert!(conformal_phi(1.0_f64).is_err());
        assert!(conformal_phi(0.3_f64).is_err());
        let z = 1e8_f64;
        assert!((conformal_phi(z).unwrap() / (2.0 * z) - 1.0).abs() < 1e-8);
        assert!((conformal_phi_boundary(0.0_f64).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-16);
        assert!(conformal_phi_boundary(1.5_f64).is_err());
    }

    #[test]
    fn reduced_angle_is_exact_for_rational_angles() {
        let ctx = PhaseContext::new(GeneralizedJacobiMeasure::<f64>::abs_power(1.0).unwrap()).unwrap();
        assert_eq!(reduced_angle(&ctx, 1, 2001).unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(reduced_angle(&ctx, 1, 2000).unwrap(), 0.0);
        assert_eq!(trig_constants(&ctx, 1, 2001, Side::Right).unwrap().0, 0.0);
    }
}
