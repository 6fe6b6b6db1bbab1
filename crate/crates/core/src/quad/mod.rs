//! Quadrature rules for the three integration domains: the real line, the
//! open unit disk, and the truncated upper half-plane.
//!
//! Rules are immutable after construction and all summation is sequential
//! in node order, so results are bit-for-bit reproducible.

mod nodes;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use nodes::{gauss_hermite, gauss_legendre};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("sigma must be positive and gamma > 1 (got sigma={sigma}, gamma={gamma})")]
    BadRegion { sigma: f64, gamma: f64 },
    #[error("interval is empty or reversed: ({lo}, {hi})")]
    BadInterval { lo: f64, hi: f64 },
}

/// The ±1/2 weight exponent selecting one of the paired measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alpha {
    PlusHalf,
    MinusHalf,
}

impl Alpha {
    pub fn exponent(self) -> f64 {
        match self {
            Alpha::PlusHalf => 0.5,
            Alpha::MinusHalf => -0.5,
        }
    }

    /// The companion exponent (swaps the pair).
    pub fn flipped(self) -> Alpha {
        match self {
            Alpha::PlusHalf => Alpha::MinusHalf,
            Alpha::MinusHalf => Alpha::PlusHalf,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineRuleKind {
    /// Weight-embedded: `integrate` computes ∫ f(x)·e^{-x²} dx.
    GaussHermite { order: usize },
    GaussLegendre { order: usize, interval: (f64, f64) },
}

/// Nodes and weights for a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct LineRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: LineRuleKind,
}

impl LineRule {
    pub fn gauss_hermite(order: usize) -> Self {
        let (nodes, weights) = nodes::gauss_hermite(order);
        Self {
            nodes,
            weights,
            kind: LineRuleKind::GaussHermite { order },
        }
    }

    pub fn gauss_legendre(order: usize, lo: f64, hi: f64) -> Result<Self, QuadError> {
        if !(lo < hi) {
            return Err(QuadError::BadInterval { lo, hi });
        }
        let (x, w) = nodes::gauss_legendre(order);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let nodes = x.iter().map(|&xi| mid + half * xi).collect();
        let weights = w.iter().map(|&wi| half * wi).collect();
        Ok(Self {
            nodes,
            weights,
            kind: LineRuleKind::GaussLegendre {
                order,
                interval: (lo, hi),
            },
        })
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }
}

/// Weighted node sum. For a Gauss–Hermite rule the e^{-x²} factor is part
/// of the rule, so pass the integrand *without* it.
pub fn integrate_line<F: Fn(f64) -> Complex64>(rule: &LineRule, f: F) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f(x);
    }
    acc
}

/// Product rule on the unit disk for the measures ((1-|ω|²)/2)^α dx dy.
///
/// The radial direction runs in the substituted variable u = √(1-r²), which
/// absorbs the boundary weight exactly: with r = √(1-u²),
/// (1-r²)^α r dr = u^{2α+1} du, so both α = ±1/2 lead to smooth integrands.
/// The angular direction is a uniform grid, which annihilates ω^j·ω̄^k for
/// j ≠ k (mod M) to machine precision.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskRule {
    /// Gauss–Legendre rule on (0,1) in the u variable.
    pub radial: LineRule,
    /// Number of uniform angular points.
    pub angular: usize,
}

impl DiskRule {
    pub fn new(radial_order: usize, angular: usize) -> Self {
        Self {
            radial: LineRule::gauss_legendre(radial_order, 0.0, 1.0)
                .expect("unit interval is valid"),
            angular,
        }
    }
}

/// ∫ f dν_α over the unit disk.
pub fn integrate_disk<F: Fn(Complex64) -> Complex64>(
    rule: &DiskRule,
    alpha: Alpha,
    f: F,
) -> Complex64 {
    let a = alpha.exponent();
    let dtheta = 2.0 * std::f64::consts::PI / rule.angular as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&u, &wu) in rule.radial.nodes.iter().zip(&rule.radial.weights) {
        let r = (1.0 - u * u).max(0.0).sqrt();
        let radial_weight = wu * u.powf(2.0 * a + 1.0);
        let mut ring = Complex64::new(0.0, 0.0);
        for j in 0..rule.angular {
            let theta = dtheta * j as f64;
            let omega = Complex64::from_polar(r, theta);
            ring += f(omega);
        }
        acc += radial_weight * ring * dtheta;
    }
    acc * 2f64.powf(-a)
}

/// Truncated upper half-plane region {|Re z| < σ, 1/γ < Im z < γ} with the
/// measures a^α da db (z = b + ia).
///
/// The a direction is integrated in log coordinates (a = e^t, t uniform in
/// Gauss–Legendre sense over (-ln γ, ln γ)), which equidistributes nodes
/// against the a → 0 weight behaviour.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneRule {
    pub sigma: f64,
    pub gamma: f64,
    pub b_rule: LineRule,
    /// Rule in t = ln a; node x carries jacobian weight e^t dt.
    pub t_rule: LineRule,
}

impl HalfPlaneRule {
    pub fn new(sigma: f64, gamma: f64, b_order: usize, t_order: usize) -> Result<Self, QuadError> {
        if !(sigma > 0.0 && gamma > 1.0) {
            return Err(QuadError::BadRegion { sigma, gamma });
        }
        let b_rule = LineRule::gauss_legendre(b_order, -sigma, sigma)?;
        let l = gamma.ln();
        let t_rule = LineRule::gauss_legendre(t_order, -l, l)?;
        Ok(Self {
            sigma,
            gamma,
            b_rule,
            t_rule,
        })
    }

    /// All z nodes in a fixed (row-major in a, then b) order.
    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(self.t_rule.order() * self.b_rule.order());
        for &t in &self.t_rule.nodes {
            let a = t.exp();
            for &b in &self.b_rule.nodes {
                pts.push(Complex64::new(b, a));
            }
        }
        pts
    }

    /// Combined weights w_a·w_b·a^α·(jacobian a), aligned with `points`.
    pub fn weights(&self, alpha: Alpha) -> Vec<f64> {
        let e = alpha.exponent();
        let mut ws = Vec::with_capacity(self.t_rule.order() * self.b_rule.order());
        for (&t, &wt) in self.t_rule.nodes.iter().zip(&self.t_rule.weights) {
            let a = t.exp();
            let row = wt * a * a.powf(e);
            for &wb in &self.b_rule.weights {
                ws.push(row * wb);
            }
        }
        ws
    }
}

/// ∫_R f(z) a^α da db over the truncated region.
pub fn integrate_halfplane<F: Fn(Complex64) -> Complex64>(
    rule: &HalfPlaneRule,
    alpha: Alpha,
    f: F,
) -> Complex64 {
    let pts = rule.points();
    let ws = rule.weights(alpha);
    integrate_halfplane_values(&ws, &pts.iter().map(|&z| f(z)).collect::<Vec<_>>())
}

/// Same integral from precomputed integrand values aligned with
/// [`HalfPlaneRule::points`]. Callers that evaluate several integrals of
/// one expensive function reuse the values.
pub fn integrate_halfplane_values(weights: &[f64], values: &[Complex64]) -> Complex64 {
    debug_assert_eq!(weights.len(), values.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for (&w, &v) in weights.iter().zip(values) {
        acc += w * v;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn hermite_moments_are_exact() {
        let rule = LineRule::gauss_hermite(120);
        // ∫ e^{-x²} dx = √π and ∫ x² e^{-x²} dx = √π/2
        assert_abs_diff_eq!(integrate_line(&rule, |_| c(1.0)).re, PI.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(
            integrate_line(&rule, |x| c(x * x)).re,
            PI.sqrt() / 2.0,
            epsilon = 1e-13
        );
        // odd integrand
        assert_abs_diff_eq!(integrate_line(&rule, |x| c(x)).re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn hermite_high_even_moments() {
        // ∫ x^{2j} e^{-x²} dx = Γ(j + 1/2), exact for j ≤ order-1.
        let order = 120;
        let rule = LineRule::gauss_hermite(order);
        let mut gamma_half = PI.sqrt(); // Γ(1/2)
        for j in 1..order {
            gamma_half *= j as f64 - 0.5;
            let got = integrate_line(&rule, |x| c(x.powi(2 * j as i32))).re;
            let rel = ((got - gamma_half) / gamma_half).abs();
            assert!(rel < 1e-13, "j={} rel={}", j, rel);
        }
    }

    #[test]
    fn legendre_polynomial_exactness() {
        let rule = LineRule::gauss_legendre(40, -1.0, 1.0).unwrap();
        for j in 0..40 {
            let exact = 2.0 / (2.0 * j as f64 + 1.0);
            let got = integrate_line(&rule, |x| c(x.powi(2 * j))).re;
            assert_abs_diff_eq!(got, exact, epsilon = 1e-13 * exact.max(1.0));
        }
    }

    #[test]
    fn disk_rule_constant_and_monomials() {
        let rule = DiskRule::new(80, 64);
        // ∫ dν_{1/2} = 2π/(3√2)
        let v = integrate_disk(&rule, Alpha::PlusHalf, |_| c(1.0));
        assert_abs_diff_eq!(v.re, 2.0 * PI / (3.0 * 2f64.sqrt()), epsilon = 1e-12);
        // angular orthogonality kills ω
        let v = integrate_disk(&rule, Alpha::PlusHalf, |w| w);
        assert!(v.norm() < 1e-13);
        // ∫ |ω|² dν_{-1/2} = √2·π·Β(2, 1/2) = 4√2π/3
        let v = integrate_disk(&rule, Alpha::MinusHalf, |w| c(w.norm_sqr()));
        assert_abs_diff_eq!(v.re, 4.0 * 2f64.sqrt() * PI / 3.0, epsilon = 1e-11);
    }

    #[test]
    fn disk_rule_annihilates_mixed_monomials() {
        let rule = DiskRule::new(40, 64);
        for (j, k) in [(1usize, 2usize), (3, 0), (5, 2), (8, 1)] {
            let v = integrate_disk(&rule, Alpha::MinusHalf, |w| {
                w.powu(j as u32) * w.conj().powu(k as u32)
            });
            assert!(v.norm() < 1e-13, "({}, {}) -> {}", j, k, v.norm());
        }
    }

    #[test]
    fn halfplane_gamma_oracle() {
        // f(z) = a·e^{-a} with α = -1/2 and σ = 1:
        // ∫_R = 2σ ∫ a^{1/2} e^{-a} da → 2·Γ(3/2) as γ → ∞.
        let exact = PI.sqrt(); // 2·Γ(3/2)
        let mut prev_err = f64::INFINITY;
        for gamma in [32.0, 1e3, 1e5] {
            let rule = HalfPlaneRule::new(1.0, gamma, 96, 96).unwrap();
            let v = integrate_halfplane(&rule, Alpha::MinusHalf, |z| c(z.im * (-z.im).exp()));
            let err = (v.re - exact).abs();
            assert!(err < prev_err, "gamma={} err={}", gamma, err);
            prev_err = err;
        }
        assert!(prev_err < 1e-6);
    }

    #[test]
    fn halfplane_zero_integrand() {
        let rule = HalfPlaneRule::new(4.0, 8.0, 32, 32).unwrap();
        let v = integrate_halfplane(&rule, Alpha::PlusHalf, |_| c(0.0));
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn bad_region_is_rejected() {
        assert!(HalfPlaneRule::new(0.0, 8.0, 8, 8).is_err());
        assert!(HalfPlaneRule::new(1.0, 1.0, 8, 8).is_err());
    }
}
