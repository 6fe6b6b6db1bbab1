//! Concrete actions of the one-parameter groups (dilation, translation,
//! quadratic chirp) and the affine family U[p,q] on test functions, plus
//! the truncated-series evaluator that cross-checks the dilation action
//! against the coefficient table.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::gaussian::{inner_product, GaussianError, GaussianTerm};
use crate::opcore::stirling_table;
use crate::quad::LineRule;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActionError {
    #[error("operation needs a closed-form (analytic) test function")]
    SampledUnsupported,
    #[error("affine parameter p must be positive (got {p})")]
    NonPositiveScale { p: f64 },
    #[error("sample grid must be strictly increasing")]
    BadGrid,
    #[error("point {x} lies outside the sample grid")]
    OutsideGrid { x: f64 },
    #[error("parity split of a sampled function needs a symmetric grid")]
    AsymmetricGrid,
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

/// A label (p, q) of the affine family, p > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineLabel {
    pub p: f64,
    pub q: f64,
}

impl AffineLabel {
    pub fn new(p: f64, q: f64) -> Result<Self, ActionError> {
        if !(p > 0.0) {
            return Err(ActionError::NonPositiveScale { p });
        }
        Ok(Self { p, q })
    }
}

/// A test function: either a finite sum of Gaussian-polynomial atoms
/// (closed under every action here, with exact derivatives) or a sampled
/// grid of values.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFn {
    Analytic(Vec<GaussianTerm>),
    Sampled {
        grid: Vec<f64>,
        values: Vec<Complex64>,
    },
}

impl TestFn {
    pub fn analytic(terms: Vec<GaussianTerm>) -> Self {
        TestFn::Analytic(terms)
    }

    /// (Σ c_k x^k)·e^{-x²/2}.
    pub fn gaussian_poly(coeffs: &[Complex64]) -> Self {
        TestFn::Analytic(vec![GaussianTerm::unit_gaussian(coeffs)])
    }

    /// The odd fiducial x·e^{-x²/2}.
    pub fn fiducial_odd() -> Self {
        Self::gaussian_poly(&[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    /// The even fiducial x²·e^{-x²/2}.
    pub fn fiducial_even() -> Self {
        Self::gaussian_poly(&[
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ])
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self, ActionError> {
        if grid.len() != values.len() || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ActionError::BadGrid);
        }
        Ok(TestFn::Sampled { grid, values })
    }

    pub fn terms(&self) -> Result<&[GaussianTerm], ActionError> {
        match self {
            TestFn::Analytic(t) => Ok(t),
            TestFn::Sampled { .. } => Err(ActionError::SampledUnsupported),
        }
    }

    /// Evaluate at a real point (linear interpolation on sampled grids).
    pub fn eval(&self, x: f64) -> Result<Complex64, ActionError> {
        match self {
            TestFn::Analytic(terms) => Ok(terms.iter().map(|t| t.eval(x)).sum()),
            TestFn::Sampled { grid, values } => {
                if grid.is_empty() || x < grid[0] || x > *grid.last().unwrap() {
                    return Err(ActionError::OutsideGrid { x });
                }
                let i = match grid.binary_search_by(|g| g.partial_cmp(&x).unwrap()) {
                    Ok(i) => return Ok(values[i]),
                    Err(i) => i,
                };
                let (x0, x1) = (grid[i - 1], grid[i]);
                let t = (x - x0) / (x1 - x0);
                Ok(values[i - 1] * (1.0 - t) + values[i] * t)
            }
        }
    }

    /// Exact derivative (analytic only).
    pub fn derivative(&self) -> Result<TestFn, ActionError> {
        let terms = self.terms()?;
        Ok(TestFn::Analytic(terms.iter().map(GaussianTerm::derivative).collect()))
    }

    /// L² norm by Gauss–Hermite quadrature (analytic only).
    pub fn l2_norm(&self, rule: &LineRule) -> Result<f64, ActionError> {
        let terms = self.terms()?;
        let sq = inner_product(terms, terms, rule)?;
        Ok(sq.re.max(0.0).sqrt())
    }

    /// Splits into even and odd parts.
    pub fn parity_split(&self) -> Result<ParitySplit, ActionError> {
        match self {
            TestFn::Analytic(terms) => {
                let mut even = Vec::new();
                let mut odd = Vec::new();
                for t in terms {
                    // f(x) = t(x): even part (t(x)+t(-x))/2 via the reflected atom
                    let reflected = t.dilate(-1.0);
                    let half = Complex64::new(0.5, 0.0);
                    even.push(t.scaled(half));
                    even.push(reflected.scaled(half));
                    odd.push(t.scaled(half));
                    odd.push(reflected.scaled(-half));
                }
                Ok(ParitySplit {
                    even: TestFn::Analytic(even),
                    odd: TestFn::Analytic(odd),
                })
            }
            TestFn::Sampled { grid, values } => {
                let n = grid.len();
                for i in 0..n {
                    if (grid[i] + grid[n - 1 - i]).abs() > 1e-12 {
                        return Err(ActionError::AsymmetricGrid);
                    }
                }
                let mut even = Vec::with_capacity(n);
                let mut odd = Vec::with_capacity(n);
                for i in 0..n {
                    let v = values[i];
                    let vr = values[n - 1 - i];
                    even.push((v + vr) * 0.5);
                    odd.push((v - vr) * 0.5);
                }
                Ok(ParitySplit {
                    even: TestFn::Sampled {
                        grid: grid.clone(),
                        values: even,
                    },
                    odd: TestFn::Sampled {
                        grid: grid.clone(),
                        values: odd,
                    },
                })
            }
        }
    }

    /// Numeric parity probe on a fixed grid; returns (even_defect, odd_defect).
    pub fn parity_defects(&self) -> (f64, f64) {
        let xs = [0.3, 0.9, 1.7, 2.4];
        let mut even = 0.0f64;
        let mut odd = 0.0f64;
        for &x in &xs {
            let (a, b) = match (self.eval(x), self.eval(-x)) {
                (Ok(a), Ok(b)) => (a, b),
                _ => continue,
            };
            even = even.max((a - b).norm());
            odd = odd.max((a + b).norm());
        }
        (even, odd)
    }
}

/// Even/odd decomposition of a test function.
#[derive(Debug, Clone)]
pub struct ParitySplit {
    pub even: TestFn,
    pub odd: TestFn,
}

/// x ↦ f(e^m·x), in closed form for analytic inputs; sampled grids are
/// rescaled (values move with their carrier points).
pub fn act_dilation_exact(m: f64, f: &TestFn) -> TestFn {
    let lambda = m.exp();
    match f {
        TestFn::Analytic(terms) => {
            TestFn::Analytic(terms.iter().map(|t| t.dilate(lambda)).collect())
        }
        TestFn::Sampled { grid, values } => TestFn::Sampled {
            grid: grid.iter().map(|x| x / lambda).collect(),
            values: values.clone(),
        },
    }
}

/// Truncated series Σ_{n≤N} (mⁿ/n!)·[(QD)ⁿf](x), expanding (QD)ⁿ through
/// the coefficient table as Σ_r a(n,r)·x^r·f^(r)(x). The series converges
/// to f(e^m x); |m| ≤ 1/2 keeps N = 30 inside the documented accuracy
/// window.
pub fn act_dilation_series(m: f64, f: &TestFn, x: f64, n_max: u32) -> Result<Complex64, ActionError> {
    let terms = f.terms()?;
    // f^{(r)}(x) for r = 0..N
    let mut derivs = Vec::with_capacity(n_max as usize + 1);
    let mut current: Vec<GaussianTerm> = terms.to_vec();
    for _ in 0..=n_max {
        let value: Complex64 = current.iter().map(|t| t.eval(x)).sum();
        derivs.push(value);
        current = current.iter().map(GaussianTerm::derivative).collect();
    }
    let table = stirling_table(n_max.max(1));
    let mut total = derivs[0];
    let mut m_pow_over_fact = 1.0f64;
    for n in 1..=n_max {
        m_pow_over_fact *= m / f64::from(n);
        let mut inner = Complex64::new(0.0, 0.0);
        for r in 1..=n {
            let a = table.value(n, r).to_f64().unwrap_or(f64::NAN);
            inner += a * x.powi(r as i32) * derivs[r as usize];
        }
        total += m_pow_over_fact * inner;
    }
    Ok(total)
}

/// x ↦ f(x + m).
pub fn act_translation(m: f64, f: &TestFn) -> Result<TestFn, ActionError> {
    match f {
        TestFn::Analytic(terms) => {
            let shifted: Result<Vec<_>, _> = terms.iter().map(|t| t.translate(m)).collect();
            Ok(TestFn::Analytic(shifted?))
        }
        TestFn::Sampled { grid, values } => Ok(TestFn::Sampled {
            grid: grid.iter().map(|x| x - m).collect(),
            values: values.clone(),
        }),
    }
}

/// x ↦ e^{i·m·x²}·f(x).
pub fn act_chirp(m: f64, f: &TestFn) -> TestFn {
    match f {
        TestFn::Analytic(terms) => TestFn::Analytic(terms.iter().map(|t| t.chirp(m)).collect()),
        TestFn::Sampled { grid, values } => TestFn::Sampled {
            grid: grid.clone(),
            values: grid
                .iter()
                .zip(values)
                .map(|(&x, &v)| Complex64::new(0.0, m * x * x).exp() * v)
                .collect(),
        },
    }
}

/// The affine-family action f ↦ p^{1/4}·e^{-i·q·x²/2}·f(√p·x). Unitary on
/// L²(ℝ).
pub fn act_affine(label: AffineLabel, f: &TestFn) -> Result<TestFn, ActionError> {
    if !(label.p > 0.0) {
        return Err(ActionError::NonPositiveScale { p: label.p });
    }
    let dilated = act_dilation_exact(0.5 * label.p.ln(), f);
    let chirped = act_chirp(-0.5 * label.q, &dilated);
    let amp = label.p.powf(0.25);
    Ok(match chirped {
        TestFn::Analytic(terms) => {
            TestFn::Analytic(terms.iter().map(|t| t.scaled(Complex64::new(amp, 0.0))).collect())
        }
        TestFn::Sampled { grid, values } => TestFn::Sampled {
            grid,
            values: values.into_iter().map(|v| v * amp).collect(),
        },
    })
}

/// The two order-of-composition values at a point: translating then
/// phase-multiplying versus the other way round. Equal only when the
/// phases collapse.
pub fn check_noncommutation(
    m: f64,
    n: f64,
    f: &TestFn,
    x: f64,
) -> Result<(Complex64, Complex64), ActionError> {
    let first = Complex64::new(0.0, n * (x + m)).exp() * f.eval(x + m)?;
    let second = Complex64::new(0.0, m * x).exp() * f.eval(x + n)?;
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn plain_gaussian() -> TestFn {
        TestFn::gaussian_poly(&[c(1.0)])
    }

    #[test]
    fn dilation_exact_examples() {
        // m = 0 is the identity
        let f = plain_gaussian();
        let g = act_dilation_exact(0.0, &f);
        assert_abs_diff_eq!(g.eval(1.3).unwrap().re, f.eval(1.3).unwrap().re, epsilon = 1e-15);

        // m = ln 2: value at x = 1 is e^{-2}
        let g = act_dilation_exact(2f64.ln(), &f);
        assert_abs_diff_eq!(g.eval(1.0).unwrap().re, (-2.0f64).exp(), epsilon = 1e-15);

        // m = 0.2 on x·e^{-x²/2} at x = 1: substitution oracle
        let f = TestFn::fiducial_odd();
        let g = act_dilation_exact(0.2, &f);
        let lam: f64 = 0.2f64.exp();
        assert_abs_diff_eq!(
            g.eval(1.0).unwrap().re,
            lam * (-lam * lam / 2.0).exp(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn dilation_series_converges_to_exact_action() {
        let f = plain_gaussian();
        let m = 0.2;
        let x = 1.0;
        let series = act_dilation_series(m, &f, x, 25).unwrap();
        let exact = act_dilation_exact(m, &f).eval(x).unwrap();
        assert!((series - exact).norm() < 1e-8);
    }

    #[test]
    fn dilation_series_trivial_cases() {
        let f = TestFn::fiducial_even();
        // m = 0 reproduces f(x) exactly for any N
        let v = act_dilation_series(0.0, &f, 1.7, 12).unwrap();
        assert!((v - f.eval(1.7).unwrap()).norm() < 1e-15);
        // N = 1 is f + m·x·f'
        let x = 0.8;
        let m = 0.05;
        let v = act_dilation_series(m, &f, x, 1).unwrap();
        let expected = f.eval(x).unwrap() + m * x * f.derivative().unwrap().eval(x).unwrap();
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn dilation_series_rejects_sampled() {
        let f = TestFn::sampled(vec![-1.0, 0.0, 1.0], vec![c(0.0); 3]).unwrap();
        assert!(matches!(
            act_dilation_series(0.1, &f, 0.0, 5),
            Err(ActionError::SampledUnsupported)
        ));
    }

    #[test]
    fn translation_group_law_and_identity() {
        let f = TestFn::gaussian_poly(&[c(1.0), c(0.5)]);
        let id = act_translation(0.0, &f).unwrap();
        assert!((id.eval(0.9).unwrap() - f.eval(0.9).unwrap()).norm() < 1e-15);

        let ab = act_translation(0.4, &act_translation(0.3, &f).unwrap()).unwrap();
        let direct = act_translation(0.7, &f).unwrap();
        for &x in &[-1.2, 0.0, 0.8] {
            assert!((ab.eval(x).unwrap() - direct.eval(x).unwrap()).norm() < 1e-13);
        }
        // recentred Gaussian
        let g = act_translation(1.0, &plain_gaussian()).unwrap();
        assert_abs_diff_eq!(g.eval(0.0).unwrap().re, (-0.5f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn chirp_preserves_modulus_and_flips_sign_at_pi() {
        let f = TestFn::gaussian_poly(&[c(0.3), c(1.0)]);
        let g = act_chirp(0.7, &f);
        for &x in &[-2.0, 0.5, 1.1] {
            assert_abs_diff_eq!(
                g.eval(x).unwrap().norm(),
                f.eval(x).unwrap().norm(),
                epsilon = 1e-14
            );
        }
        let g = act_chirp(std::f64::consts::PI, &f);
        let expected = -f.eval(1.0).unwrap();
        assert!((g.eval(1.0).unwrap() - expected).norm() < 1e-13);
    }

    #[test]
    fn affine_identity_and_scaling() {
        let f = TestFn::fiducial_odd();
        let id = act_affine(AffineLabel::new(1.0, 0.0).unwrap(), &f).unwrap();
        assert!((id.eval(0.7).unwrap() - f.eval(0.7).unwrap()).norm() < 1e-15);

        // p = e², q = 0 on e^{-x²/2}: e^{1/2}·e^{-e²x²/2}
        let g = act_affine(
            AffineLabel::new(std::f64::consts::E.powi(2), 0.0).unwrap(),
            &plain_gaussian(),
        )
        .unwrap();
        let x = 0.6;
        let e2 = std::f64::consts::E.powi(2);
        let expected = 0.5f64.exp() * (-e2 * x * x / 2.0).exp();
        assert_abs_diff_eq!(g.eval(x).unwrap().re, expected, epsilon = 1e-14);
    }

    #[test]
    fn affine_preserves_l2_norm() {
        let rule = LineRule::gauss_hermite(120);
        let f = TestFn::gaussian_poly(&[c(0.4), c(1.0), c(-0.3)]);
        let before = f.l2_norm(&rule).unwrap();
        let g = act_affine(AffineLabel::new(2.7, 1.3).unwrap(), &f).unwrap();
        let after = g.l2_norm(&rule).unwrap();
        assert!(((after - before) / before).abs() < 1e-10, "{} vs {}", before, after);
    }

    #[test]
    fn affine_rejects_nonpositive_p() {
        assert!(AffineLabel::new(0.0, 1.0).is_err());
        assert!(AffineLabel::new(-2.0, 0.0).is_err());
    }

    #[test]
    fn noncommutation_pair() {
        let one = TestFn::Analytic(vec![GaussianTerm::one()]);
        let (a, b) = check_noncommutation(0.0, 0.0, &one, 0.3).unwrap();
        assert!((a - b).norm() < 1e-15);

        let (a, b) = check_noncommutation(1.0, 0.0, &TestFn::fiducial_even(), 0.5).unwrap();
        assert!((a - b).norm() < 1e-15);

        let (a, b) = check_noncommutation(1.0, std::f64::consts::PI, &one, 0.0).unwrap();
        assert!((a - c(-1.0)).norm() < 1e-14);
        assert!((b - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn parity_split_even_odd() {
        // x e^{-x²/2} + e^{-x²/2}
        let f = TestFn::gaussian_poly(&[c(1.0), c(1.0)]);
        let split = f.parity_split().unwrap();
        for &x in &[0.4, 1.1, 2.0] {
            let e = split.even.eval(x).unwrap();
            let o = split.odd.eval(x).unwrap();
            assert!((e - split.even.eval(-x).unwrap()).norm() < 1e-13);
            assert!((o + split.odd.eval(-x).unwrap()).norm() < 1e-13);
            assert!((e + o - f.eval(x).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn sampled_grid_operations() {
        let grid: Vec<f64> = (-10..=10).map(|i| i as f64 / 5.0).collect();
        let values: Vec<Complex64> = grid.iter().map(|&x| c((-x * x / 2.0).exp())).collect();
        let f = TestFn::sampled(grid, values).unwrap();
        let shifted = act_translation(0.5, &f).unwrap();
        assert!((shifted.eval(0.0).unwrap() - f.eval(0.5).unwrap()).norm() < 1e-12);
        assert!(matches!(
            f.eval(100.0),
            Err(ActionError::OutsideGrid { .. })
        ));
    }
}
