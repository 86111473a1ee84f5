use std::collections::HashMap;

use super::gauss_jacobi::gauss_jacobi;
use super::GeneralizedJacobiMeasure;
use crate::error::{bail, Result};
use crate::scalar::{compensated_sum, Real};

/// Nodes strictly increasing in `(-1, 1)`, weights positive.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        compensated_sum(self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)))
    }

    pub fn total_weight(&self) -> T {
        compensated_sum(self.weights.iter().copied())
    }
}

type RuleCache<T> = HashMap<(u64, u64), (Vec<T>, Vec<T>)>;

fn key<T: Real>(a: T, b: T) -> (u64, u64) {
    (a.to_f64_lossy().to_bits(), b.to_f64_lossy().to_bits())
}

/// Gauss–Jacobi rule, reusing the mirror image of a cached `(beta, alpha)` rule.
fn cached_rule<T: Real>(cache: &mut RuleCache<T>, alpha: T, beta: T, m: usize) -> Result<(Vec<T>, Vec<T>)> {
    if let Some(r) = cache.get(&key(alpha, beta)) {
        return Ok(r.clone());
    }
    if let Some((x, w)) = cache.get(&key(beta, alpha)) {
        let x: Vec<T> = x.iter().rev().map(|&v| -v).collect();
        let w: Vec<T> = w.iter().rev().copied().collect();
        return Ok((x, w));
    }
    let r = gauss_jacobi(alpha, beta, m)?;
    cache.insert(key(alpha, beta), r.clone());
    Ok(r)
}

/// Composite Gauss–Jacobi rule with `degree + 1` nodes per subinterval
/// between consecutive singular points; each subinterval rule absorbs the
/// two adjacent algebraic factors exactly.
pub fn build_composite_rule<T: Real>(
    measure: &GeneralizedJacobiMeasure<T>,
    degree: usize,
) -> Result<QuadratureRule<T>> {
    if degree == 0 {
        bail!(Precondition, "quadrature degree must be at least 1");
    }
    let one = T::one();
    let half = T::lit(0.5);
    let sing = measure.singularities();
    // breakpoints with their exponents: -1 (beta), x_1..x_s, +1 (alpha)
    let mut points = vec![(-one, measure.beta())];
    points.extend(sing.iter().map(|s| (s.position(), s.exponent())));
    points.push((one, measure.alpha()));
    let last = points.len() - 1;

    let mut cache = RuleCache::new();
    let mut nodes = Vec::with_capacity((degree + 1) * last);
    let mut weights = Vec::with_capacity((degree + 1) * last);
    for j in 0..last {
        let (l, e_l) = points[j];
        let (r, e_r) = points[j + 1];
        let h = (r - l) * half;
        let (t, w) = cached_rule(&mut cache, e_r, e_l, degree + 1)?;
        let scale = h.powf(one + e_l + e_r);
        for (&tk, &wk) in t.iter().zip(&w) {
            let x = l + h * (tk + one);
            let mut f = measure.h().eval(x);
            for (i, &(p, e)) in points.iter().enumerate() {
                if i == j || i == j + 1 || e == T::zero() {
                    continue;
                }
                f = f * (x - p).abs().powf(e);
            }
            let wt = scale * wk * f;
            if !(wt >= T::zero()) || !wt.is_finite() {
                bail!(Quadrature, "invalid quadrature weight {wt} at x = {x}");
            }
            nodes.push(x);
            weights.push(wt);
        }
    }
    if nodes.windows(2).any(|p| !(p[0] < p[1])) {
        bail!(Quadrature, "composite nodes are not strictly increasing; subintervals too short for degree {degree}");
    }
    Ok(QuadratureRule { nodes, weights })
}
