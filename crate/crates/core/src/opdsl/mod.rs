//! A small expression language for operator polynomials.
//!
//! Juxtaposition is the (noncommutative) operator product, `^` binds
//! tighter than juxtaposition, which binds tighter than `+`/`-`, and `i`
//! is a reserved scalar literal. `P` is accepted as input and eliminated
//! during lowering through `P = -i·D`. The grammar is documented in
//! docs/grammar.md.

mod parse;
mod print;

pub use parse::{parse, ParseError};
pub use print::print_normal_form;

use num_rational::BigRational;
use thiserror::Error;

use crate::opcore::{normal_order, GaussianRational, Letter, NormalForm, OperatorPolynomial, OperatorWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Q,
    D,
    P,
}

/// Abstract syntax for operator expressions. Products preserve factor
/// order; powers may hold negative exponents at this level and are
/// rejected when lowering.
#[derive(Debug, Clone, PartialEq)]
pub enum OpExpr {
    Rational(BigRational),
    ImaginaryUnit,
    Generator(Generator),
    Product(Vec<OpExpr>),
    Sum(Box<OpExpr>, Box<OpExpr>),
    Difference(Box<OpExpr>, Box<OpExpr>),
    Negate(Box<OpExpr>),
    Power(Box<OpExpr>, i64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LowerError {
    #[error("negative powers are not supported (got exponent {0})")]
    NegativePower(i64),
    #[error("exponent {0} is too large")]
    HugeExponent(i64),
}

/// Expands an expression into the word/coefficient representation,
/// eliminating `P` along the way.
pub fn lower(expr: &OpExpr) -> Result<OperatorPolynomial, LowerError> {
    Ok(match expr {
        OpExpr::Rational(r) => OperatorPolynomial::from_word(
            OperatorWord::identity(),
            GaussianRational::from_real(r.clone()),
        ),
        OpExpr::ImaginaryUnit => {
            OperatorPolynomial::from_word(OperatorWord::identity(), GaussianRational::i())
        }
        OpExpr::Generator(Generator::Q) => OperatorPolynomial::from_word(
            OperatorWord::from_letters(&[Letter::Q]),
            GaussianRational::one(),
        ),
        OpExpr::Generator(Generator::D) => OperatorPolynomial::from_word(
            OperatorWord::from_letters(&[Letter::D]),
            GaussianRational::one(),
        ),
        // P = -i·D
        OpExpr::Generator(Generator::P) => OperatorPolynomial::from_word(
            OperatorWord::from_letters(&[Letter::D]),
            -GaussianRational::i(),
        ),
        OpExpr::Product(factors) => {
            let mut acc = OperatorPolynomial::identity();
            for f in factors {
                acc = acc.mul(&lower(f)?);
            }
            acc
        }
        OpExpr::Sum(a, b) => lower(a)?.add(&lower(b)?),
        OpExpr::Difference(a, b) => {
            lower(a)?.add(&lower(b)?.scale(&GaussianRational::from_integer(-1)))
        }
        OpExpr::Negate(a) => lower(a)?.scale(&GaussianRational::from_integer(-1)),
        OpExpr::Power(base, k) => {
            if *k < 0 {
                return Err(LowerError::NegativePower(*k));
            }
            let k = u32::try_from(*k).map_err(|_| LowerError::HugeExponent(*k))?;
            lower(base)?.pow(k)
        }
    })
}

/// Parse, lower and normal-order in one step.
pub fn eval_normal_form(src: &str) -> Result<NormalForm, String> {
    let expr = parse(src).map_err(|e| e.to_string())?;
    let poly = lower(&expr).map_err(|e| e.to_string())?;
    Ok(normal_order(&poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::stirling_table;
    use num_bigint::BigInt;

    #[test]
    fn lower_power_of_qd() {
        let expr = parse("(Q D)^2").unwrap();
        let poly = lower(&expr).unwrap();
        assert_eq!(poly.terms.len(), 1);
        let word = OperatorWord::from_letters(&[Letter::Q, Letter::D, Letter::Q, Letter::D]);
        assert_eq!(poly.terms[&word], GaussianRational::one());
    }

    #[test]
    fn lower_cancellation() {
        let nf = eval_normal_form("2 Q D - Q D").unwrap();
        assert_eq!(nf, NormalForm::from_term(1, 1, GaussianRational::one()));
    }

    #[test]
    fn lower_pq_gives_minus_i_qd_plus_i() {
        // P Q = -i·DQ = -i(QD + I)
        let nf = eval_normal_form("P Q").unwrap();
        let minus_i = -GaussianRational::i();
        let mut expected = NormalForm::from_term(1, 1, minus_i.clone());
        expected.add_term(0, 0, minus_i);
        assert_eq!(nf, expected);
    }

    #[test]
    fn negative_power_is_rejected() {
        let expr = parse("Q^-1").unwrap();
        assert!(matches!(lower(&expr), Err(LowerError::NegativePower(-1))));
    }

    #[test]
    fn print_then_parse_row_three() {
        let table = stirling_table(3);
        let mut nf = NormalForm::zero();
        for r in 1..=3u32 {
            let v = table.value(3, r);
            nf.add_term(
                r,
                r,
                GaussianRational::from_real(num_rational::BigRational::from_integer(v)),
            );
        }
        let text = print_normal_form(&nf);
        assert_eq!(text, "Q^1 D^1 + 3 Q^2 D^2 + Q^3 D^3");
        assert_eq!(eval_normal_form(&text).unwrap(), nf);
    }

    #[test]
    fn print_examples() {
        assert_eq!(
            print_normal_form(&NormalForm::from_term(1, 1, GaussianRational::one())),
            "Q^1 D^1"
        );
        let mut nf = NormalForm::from_term(2, 2, GaussianRational::one());
        nf.add_term(1, 1, GaussianRational::one());
        assert_eq!(print_normal_form(&nf), "Q^1 D^1 + Q^2 D^2");
        assert_eq!(print_normal_form(&NormalForm::zero()), "0");
        assert_eq!(print_normal_form(&NormalForm::identity()), "1");
    }

    #[test]
    fn round_trip_with_gaussian_coefficients() {
        let mut nf = NormalForm::from_term(0, 2, GaussianRational::from_ratio(-3, 4));
        nf.add_term(
            2,
            0,
            GaussianRational::new(
                num_rational::BigRational::new(BigInt::from(1), BigInt::from(3)),
                num_rational::BigRational::new(BigInt::from(-5), BigInt::from(2)),
            ),
        );
        nf.add_term(
            1,
            1,
            GaussianRational::new(
                num_rational::BigRational::from_integer(BigInt::from(0)),
                num_rational::BigRational::from_integer(BigInt::from(2)),
            ),
        );
        let text = print_normal_form(&nf);
        let back = eval_normal_form(&text).unwrap();
        assert_eq!(back, nf, "printed as {:?}", text);
    }
}
