//! weylberg-core: exact symbolic normal ordering for the one-variable Weyl
//! algebra, together with a numerical analysis layer for the associated
//! coherent-state transforms, weighted Bergman spaces on the upper half-plane
//! and unit disk, and the operators they carry.
//!
//! The crate splits into two halves:
//!
//! * exact algebra — [`opcore`] (words in Q and D, normal forms, the
//!   `a(n,r)` coefficient table) and [`opdsl`] (a small expression language
//!   for entering operator polynomials as text);
//! * numerics — [`gaussian`] (the Gaussian-polynomial test-function engine),
//!   [`quad`] (line/disk/half-plane quadrature), [`actions`] (one-parameter
//!   group actions on test functions), [`spaces`] (kernels, bases, Cayley
//!   maps), [`xform`] (the parity coherent-state transforms and their
//!   inverses) and [`equiv`] (operators transported to the transform side).
//!
//! [`verify`] packages the identity checks behind all of the above into
//! machine-readable records; the `weylberg` CLI drives them.

pub mod actions;
pub mod equiv;
pub mod gaussian;
pub mod opcore;
pub mod opdsl;
pub mod quad;
pub mod report;
pub mod spaces;
pub mod verify;
pub mod xform;

pub use num_complex::Complex64;
