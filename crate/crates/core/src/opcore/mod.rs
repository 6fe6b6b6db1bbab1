//! Exact symbolic algebra for the one-variable Weyl algebra.
//!
//! Everything here is exact: scalars are Gaussian rationals, the `a(n,r)`
//! coefficients are big integers, and normal ordering is pure term
//! rewriting on the relation `D·Q = Q·D + I`.
//!
//! The momentum generator `P` never appears below this layer; it is
//! eliminated at the DSL boundary through the substitution `P = -i·D`.

mod algebra;
mod coeffs;
mod scalar;

pub use algebra::{normal_order, qd_step, Letter, NormalForm, OperatorPolynomial, OperatorWord};
pub use coeffs::{egf_partial_sum, stirling_coeff, stirling_table, CoeffTable};
pub use scalar::GaussianRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("coefficient indices must be positive (got n={n}, r={r})")]
    CoeffDomain { n: u32, r: u32 },
}
