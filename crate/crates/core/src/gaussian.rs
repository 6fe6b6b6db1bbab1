//! The Gaussian-polynomial function family
//! `x ↦ p(x)·exp(-γ·x²/2 + β·x)` with a complex Laurent polynomial `p`,
//! complex width γ (Re γ ≥ 0) and complex tilt β.
//!
//! The family is closed under differentiation, multiplication by powers of
//! x, translation, dilation and quadratic chirps, which is exactly what the
//! group actions and the transform-side operators need. Laurent powers down
//! to x⁻² are allowed so the singular operators Q⁻¹, Q⁻² stay total on the
//! functions that carry compensating x-factors.

use num_complex::Complex64;
use thiserror::Error;

use crate::quad::{integrate_line, LineRule, LineRuleKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaussianError {
    #[error("operation needs a plain polynomial part (lowest power is {min_pow})")]
    NegativePowers { min_pow: i32 },
    #[error("integrand does not decay: Re(width) = {re} must be positive")]
    NonDecaying { re: f64 },
    #[error("a Gauss–Hermite rule is required here")]
    WrongRule,
}

/// One atom of the family. `coeffs[j]` multiplies x^(min_pow + j).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTerm {
    coeffs: Vec<Complex64>,
    min_pow: i32,
    /// γ in exp(-γx²/2 + βx).
    pub width: Complex64,
    /// β in exp(-γx²/2 + βx).
    pub tilt: Complex64,
}

fn is_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

impl GaussianTerm {
    pub fn new(coeffs: Vec<Complex64>, min_pow: i32, width: Complex64, tilt: Complex64) -> Self {
        let mut t = Self {
            coeffs,
            min_pow,
            width,
            tilt,
        };
        t.trim();
        t
    }

    /// p(x)·e^{-x²/2} with ordinary polynomial coefficients (c_0, c_1, ...).
    pub fn unit_gaussian(coeffs: &[Complex64]) -> Self {
        Self::new(coeffs.to_vec(), 0, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// The constant function 1 (width zero).
    pub fn one() -> Self {
        Self::new(
            vec![Complex64::new(1.0, 0.0)],
            0,
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if is_zero(*last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        while let Some(first) = self.coeffs.first() {
            if is_zero(*first) {
                self.coeffs.remove(0);
                self.min_pow += 1;
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.min_pow = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_pow(&self) -> i32 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.min_pow
        }
    }

    pub fn max_pow(&self) -> i32 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.min_pow + self.coeffs.len() as i32 - 1
        }
    }

    pub fn coeff(&self, power: i32) -> Complex64 {
        let idx = power - self.min_pow;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// Evaluate at a real point. Negative powers blow up at x = 0; callers
    /// multiply singular terms by their compensating x-weight first.
    pub fn eval(&self, x: f64) -> Complex64 {
        let mut poly = Complex64::new(0.0, 0.0);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = self.min_pow + j as i32;
            poly += c * x.powi(k);
        }
        let exponent = -self.width * (0.5 * x * x) + self.tilt * x;
        poly * exponent.exp()
    }

    /// d/dx: (p' + (β - γx)·p)·exp(...).
    pub fn derivative(&self) -> GaussianTerm {
        let lo = self.min_pow - 1;
        let hi = self.max_pow() + 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = self.min_pow + j as i32;
            coeffs[(k - 1 - lo) as usize] += c * k as f64;
            coeffs[(k - lo) as usize] += c * self.tilt;
            coeffs[(k + 1 - lo) as usize] -= c * self.width;
        }
        GaussianTerm::new(coeffs, lo, self.width, self.tilt)
    }

    /// Multiply by x^k (k may be negative).
    pub fn mul_xpow(&self, k: i32) -> GaussianTerm {
        GaussianTerm::new(self.coeffs.clone(), self.min_pow + k, self.width, self.tilt)
    }

    pub fn scaled(&self, factor: Complex64) -> GaussianTerm {
        GaussianTerm::new(
            self.coeffs.iter().map(|&c| c * factor).collect(),
            self.min_pow,
            self.width,
            self.tilt,
        )
    }

    /// The complex conjugate as a function of a real variable.
    pub fn conj_fn(&self) -> GaussianTerm {
        GaussianTerm::new(
            self.coeffs.iter().map(|c| c.conj()).collect(),
            self.min_pow,
            self.width.conj(),
            self.tilt.conj(),
        )
    }

    /// Pointwise product (polynomials convolve, exponents add).
    pub fn product(&self, other: &GaussianTerm) -> GaussianTerm {
        if self.is_zero() || other.is_zero() {
            return GaussianTerm::new(Vec::new(), 0, self.width + other.width, self.tilt + other.tilt);
        }
        let lo = self.min_pow + other.min_pow;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GaussianTerm::new(coeffs, lo, self.width + other.width, self.tilt + other.tilt)
    }

    /// x ↦ f(x + m). Needs a plain polynomial part.
    pub fn translate(&self, m: f64) -> Result<GaussianTerm, GaussianError> {
        if self.min_pow() < 0 {
            return Err(GaussianError::NegativePowers { min_pow: self.min_pow });
        }
        // p(x+m) by binomial expansion
        let deg = self.max_pow().max(0) as usize;
        let mut poly = vec![Complex64::new(0.0, 0.0); deg + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = (self.min_pow as usize) + j;
            let mut binom = 1.0f64;
            let mut mpow = 1.0f64;
            // (x+m)^k = Σ_i C(k,i) m^(k-i) x^i, iterate i downwards from k
            for i in (0..=k).rev() {
                poly[i] += c * binom * mpow;
                if i > 0 {
                    binom *= i as f64 / (k - i + 1) as f64;
                    mpow *= m;
                }
            }
        }
        // exp(-γ(x+m)²/2 + β(x+m)) = exp(-γx²/2 + (β-γm)x) · exp(βm - γm²/2)
        let constant = (self.tilt * m - self.width * (0.5 * m * m)).exp();
        let coeffs = poly.into_iter().map(|c| c * constant).collect();
        Ok(GaussianTerm::new(coeffs, 0, self.width, self.tilt - self.width * m))
    }

    /// x ↦ f(λx) for λ > 0.
    pub fn dilate(&self, lambda: f64) -> GaussianTerm {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| c * lambda.powi(self.min_pow + j as i32))
            .collect();
        GaussianTerm::new(
            coeffs,
            self.min_pow,
            self.width * lambda * lambda,
            self.tilt * lambda,
        )
    }

    /// x ↦ e^{i·m·x²}·f(x).
    pub fn chirp(&self, m: f64) -> GaussianTerm {
        GaussianTerm::new(
            self.coeffs.clone(),
            self.min_pow,
            self.width - Complex64::new(0.0, 2.0 * m),
            self.tilt,
        )
    }

    /// Replace the width by γ - i·z (the transform kernels multiply by
    /// e^{izx²/2}).
    pub fn with_extra_quadratic_phase(&self, z: Complex64) -> GaussianTerm {
        GaussianTerm::new(
            self.coeffs.clone(),
            self.min_pow,
            self.width - Complex64::new(0.0, 1.0) * z,
            self.tilt,
        )
    }
}

/// ∫_{-∞}^{∞} p(x)·exp(-γx²/2 + βx) dx by complex-scaled Gauss–Hermite.
///
/// The substitution x = s·u with s = √(2/γ) (principal branch) rotates the
/// contour inside the sector where the integrand decays — legitimate for
/// this entire family — and absorbs the full complex Gaussian, so the rule
/// sees a polynomial times e^{βsu} and converges at machine precision even
/// for strongly oscillatory widths.
pub fn integrate_term(term: &GaussianTerm, rule: &LineRule) -> Result<Complex64, GaussianError> {
    if !matches!(rule.kind, LineRuleKind::GaussHermite { .. }) {
        return Err(GaussianError::WrongRule);
    }
    if term.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if term.min_pow() < 0 {
        return Err(GaussianError::NegativePowers { min_pow: term.min_pow() });
    }
    if term.width.re <= 0.0 {
        return Err(GaussianError::NonDecaying { re: term.width.re });
    }
    let scale = (Complex64::new(2.0, 0.0) / term.width).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = scale * u;
        let mut poly = Complex64::new(0.0, 0.0);
        let mut xp = Complex64::new(1.0, 0.0);
        // x^min_pow (min_pow ≥ 0 here)
        for _ in 0..term.min_pow() {
            xp *= x;
        }
        for &c in &term.coeffs {
            poly += c * xp;
            xp *= x;
        }
        acc += w * poly * (term.tilt * x).exp();
    }
    Ok(scale * acc)
}

/// ⟨f, g⟩ = ∫ f(x)·conj(g(x)) dx for sums of Gaussian terms.
pub fn inner_product(
    f: &[GaussianTerm],
    g: &[GaussianTerm],
    rule: &LineRule,
) -> Result<Complex64, GaussianError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in f {
        for b in g {
            acc += integrate_term(&a.product(&b.conj_fn()), rule)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_of_gaussian() {
        // d/dx e^{-x²/2} = -x e^{-x²/2}
        let g = GaussianTerm::unit_gaussian(&[c(1.0, 0.0)]);
        let d = g.derivative();
        for &x in &[-1.5, 0.0, 0.3, 2.0] {
            assert_abs_diff_eq!(d.eval(x).re, -x * (-x * x / 2.0).exp(), epsilon = 1e-15);
        }
    }

    #[test]
    fn laurent_derivative() {
        // d/dx [x^{-1} e^{-x²/2}] = (-x^{-2} - 1)·e^{-x²/2}
        let g = GaussianTerm::new(vec![c(1.0, 0.0)], -1, c(1.0, 0.0), c(0.0, 0.0));
        let d = g.derivative();
        let x = 0.7;
        let expected = (-1.0 / (x * x) - 1.0) * (-x * x / 2.0).exp();
        assert_abs_diff_eq!(d.eval(x).re, expected, epsilon = 1e-14);
    }

    #[test]
    fn translate_matches_pointwise() {
        let g = GaussianTerm::unit_gaussian(&[c(1.0, 0.0), c(0.0, 0.0), c(2.0, -1.0)]);
        let shifted = g.translate(0.8).unwrap();
        for &x in &[-2.0, -0.1, 1.4] {
            let expected = g.eval(x + 0.8);
            let got = shifted.eval(x);
            assert!((got - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn dilate_and_chirp_match_pointwise() {
        let g = GaussianTerm::unit_gaussian(&[c(0.5, 0.2), c(1.0, 0.0)]);
        let d = g.dilate(1.7);
        let ch = g.chirp(0.9);
        for &x in &[-1.0, 0.25, 2.0] {
            assert!((d.eval(x) - g.eval(1.7 * x)).norm() < 1e-14);
            let phase = Complex64::new(0.0, 0.9 * x * x).exp();
            assert!((ch.eval(x) - phase * g.eval(x)).norm() < 1e-14);
        }
    }

    #[test]
    fn gaussian_moments_by_complex_scaling() {
        let rule = LineRule::gauss_hermite(120);
        // ∫ x² e^{-ηx²/2} dx = √(2π)·η^{-3/2} at the awkward corner η = 1+1/32-8i
        let eta = c(1.0 + 1.0 / 32.0, -8.0);
        let term = GaussianTerm::new(vec![c(1.0, 0.0)], 2, eta, c(0.0, 0.0));
        let got = integrate_term(&term, &rule).unwrap();
        let exact = (2.0 * PI).sqrt() * eta.powf(-1.5);
        assert!((got - exact).norm() < 1e-13, "err {}", (got - exact).norm());

        // quartic moment too
        let term = GaussianTerm::new(vec![c(1.0, 0.0)], 4, eta, c(0.0, 0.0));
        let got = integrate_term(&term, &rule).unwrap();
        let exact = 3.0 * (2.0 * PI).sqrt() * eta.powf(-2.5);
        assert!((got - exact).norm() < 1e-12);
    }

    #[test]
    fn tilted_gaussian_integral() {
        // ∫ e^{-x²/2 + βx} dx = √(2π)·e^{β²/2}
        let rule = LineRule::gauss_hermite(120);
        let beta = c(0.4, 0.7);
        let term = GaussianTerm::new(vec![c(1.0, 0.0)], 0, c(1.0, 0.0), beta);
        let got = integrate_term(&term, &rule).unwrap();
        let exact = (2.0 * PI).sqrt() * (beta * beta * 0.5).exp();
        assert!((got - exact).norm() < 1e-12);
    }

    #[test]
    fn singular_term_is_rejected() {
        let rule = LineRule::gauss_hermite(20);
        let term = GaussianTerm::new(vec![c(1.0, 0.0)], -1, c(1.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            integrate_term(&term, &rule),
            Err(GaussianError::NegativePowers { .. })
        ));
        // multiplying back the x-weight makes it integrable
        assert!(integrate_term(&term.mul_xpow(1), &rule).is_ok());
    }

    #[test]
    fn inner_product_of_fiducials() {
        let rule = LineRule::gauss_hermite(120);
        // ⟨x e^{-x²/2}, x e^{-x²/2}⟩ = √π/2
        let f = vec![GaussianTerm::new(vec![c(1.0, 0.0)], 1, c(1.0, 0.0), c(0.0, 0.0))];
        let v = inner_product(&f, &f, &rule).unwrap();
        assert_abs_diff_eq!(v.re, PI.sqrt() / 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }
}
