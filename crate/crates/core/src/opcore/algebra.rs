//! Words, polynomials and normal forms over the generators Q and D.

use std::collections::BTreeMap;
use std::fmt;

use super::GaussianRational;

/// A generator letter. `Q` multiplies by the variable, `D` differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Q,
    D,
}

/// A finite product of generators. The empty word is the identity operator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OperatorWord(pub Vec<Letter>);

impl OperatorWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Self(letters.to_vec())
    }

    /// The word Q^a D^b.
    pub fn qd(a: u32, b: u32) -> Self {
        let mut letters = vec![Letter::Q; a as usize];
        letters.extend(std::iter::repeat(Letter::D).take(b as usize));
        Self(letters)
    }

    pub fn concat(&self, other: &OperatorWord) -> OperatorWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        OperatorWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        let s: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::Q => "Q",
                Letter::D => "D",
            })
            .collect();
        write!(f, "{}", s.join(""))
    }
}

/// A finite sum of words with exact coefficients. Zero coefficients are
/// never stored, so structural equality is semantic equality for sums of
/// identical words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorPolynomial {
    pub terms: BTreeMap<OperatorWord, GaussianRational>,
}

impl OperatorPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_word(OperatorWord::identity(), GaussianRational::one())
    }

    pub fn from_word(word: OperatorWord, coeff: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn add_term(&mut self, word: OperatorWord, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word.clone()).or_insert_with(GaussianRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &OperatorPolynomial) -> OperatorPolynomial {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &GaussianRational) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), factor * c);
        }
        out
    }

    /// Noncommutative product: concatenates every pair of words.
    pub fn mul(&self, other: &OperatorPolynomial) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> OperatorPolynomial {
        let mut out = OperatorPolynomial::identity();
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }
}

/// An operator polynomial reduced to the basis `{Q^a D^b}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NormalForm {
    pub terms: BTreeMap<(u32, u32), GaussianRational>,
}

impl NormalForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_term(0, 0, GaussianRational::one())
    }

    pub fn from_term(a: u32, b: u32, coeff: GaussianRational) -> Self {
        let mut nf = Self::zero();
        nf.add_term(a, b, coeff);
        nf
    }

    pub fn add_term(&mut self, a: u32, b: u32, coeff: GaussianRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(GaussianRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &GaussianRational) -> NormalForm {
        let mut out = NormalForm::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, factor * c);
        }
        out
    }

    /// Coefficient of Q^a D^b (zero when absent).
    pub fn coeff(&self, a: u32, b: u32) -> GaussianRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Reinterpret as a sum of words. Normal-ordering the result gives back
    /// `self` (round-trip law).
    pub fn to_polynomial(&self) -> OperatorPolynomial {
        let mut p = OperatorPolynomial::zero();
        for (&(a, b), c) in &self.terms {
            p.add_term(OperatorWord::qd(a, b), c.clone());
        }
        p
    }
}

/// Rewrites a polynomial into normal order using `D^b Q = Q D^b + b D^(b-1)`.
///
/// Each word is folded left to right through a running normal form, which
/// keeps the rewriting linear in the number of letters times the number of
/// live terms. Linear and idempotent by construction.
pub fn normal_order(p: &OperatorPolynomial) -> NormalForm {
    let mut out = NormalForm::zero();
    for (word, coeff) in &p.terms {
        let nf = normal_order_word(word);
        out = out.add(&nf.scale(coeff));
    }
    out
}

fn normal_order_word(word: &OperatorWord) -> NormalForm {
    let mut nf = NormalForm::identity();
    for letter in &word.0 {
        let mut next = NormalForm::zero();
        for (&(a, b), c) in &nf.terms {
            match letter {
                Letter::D => next.add_term(a, b + 1, c.clone()),
                Letter::Q => {
                    next.add_term(a + 1, b, c.clone());
                    if b > 0 {
                        let factor = GaussianRational::from_integer(i64::from(b));
                        next.add_term(a, b - 1, factor * c.clone());
                    }
                }
            }
        }
        nf = next;
    }
    nf
}

/// Left-multiplies a normal form by Q·D.
///
/// Diagonal terms use the step identity `QD(Q^n D^n) = Q^(n+1) D^(n+1) +
/// n·Q^n D^n`; off-diagonal terms go through the full rewriting engine.
pub fn qd_step(nf: &NormalForm) -> NormalForm {
    let mut out = NormalForm::zero();
    for (&(a, b), c) in &nf.terms {
        if a == b {
            out.add_term(a + 1, b + 1, c.clone());
            if a > 0 {
                let n = GaussianRational::from_integer(i64::from(a));
                out.add_term(a, b, n * c.clone());
            }
        } else {
            let word = OperatorWord::qd(1, 1).concat(&OperatorWord::qd(a, b));
            let reordered = normal_order(&OperatorPolynomial::from_word(word, c.clone()));
            out = out.add(&reordered);
        }
    }
    out
}
