//! Deterministic pretty-printer for normal forms. The output parses back
//! to an equal normal form.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::opcore::{GaussianRational, NormalForm};

fn rational_magnitude(r: &BigRational) -> String {
    format!("{}", r.abs())
}

/// Splits a coefficient into a leading sign and a parseable magnitude
/// string; `None` magnitude means an implicit factor 1.
fn coefficient_pieces(c: &GaussianRational) -> (bool, Option<String>) {
    if c.im.is_zero() {
        let negative = c.re.is_negative();
        let mag = c.re.abs();
        if mag.is_one() {
            (negative, None)
        } else {
            (negative, Some(rational_magnitude(&c.re)))
        }
    } else if c.re.is_zero() {
        let negative = c.im.is_negative();
        let mag = c.im.abs();
        if mag.is_one() {
            (negative, Some("i".to_string()))
        } else {
            (negative, Some(format!("{} i", rational_magnitude(&c.im))))
        }
    } else {
        // mixed coefficients print as a parenthesized scalar sum
        let im_sign = if c.im.is_negative() { "-" } else { "+" };
        (
            false,
            Some(format!(
                "({} {} {} i)",
                c.re,
                im_sign,
                rational_magnitude(&c.im)
            )),
        )
    }
}

fn word_string(a: u32, b: u32) -> Option<String> {
    match (a, b) {
        (0, 0) => None,
        (a, 0) => Some(format!("Q^{}", a)),
        (0, b) => Some(format!("D^{}", b)),
        (a, b) => Some(format!("Q^{} D^{}", a, b)),
    }
}

/// Renders a normal form in ascending (a, b) order with exact coefficients.
pub fn print_normal_form(nf: &NormalForm) -> String {
    if nf.terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (&(a, b), coeff)) in nf.terms.iter().enumerate() {
        let (negative, magnitude) = coefficient_pieces(coeff);
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let word = word_string(a, b);
        match (magnitude, word) {
            (Some(m), Some(w)) => {
                out.push_str(&m);
                out.push(' ');
                out.push_str(&w);
            }
            (Some(m), None) => out.push_str(&m),
            (None, Some(w)) => out.push_str(&w),
            (None, None) => out.push('1'),
        }
    }
    out
}
