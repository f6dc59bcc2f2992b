//! Exact computer algebra for Kauffman bracket skein modules of the small
//! Seifert-fibered lens spaces `L(β₁,2)`, `L(4k,2k+1)` and of `S²×S¹`.
//!
//! Framed-link classes enter as words in the arrow-diagram algebra Γ
//! (λ-powers interleaved with x-generators), get rewritten to coordinates
//! over the fibered-torus basis `Σ'_{ν₁} = {λ^n, x_{ν₁}λ^n}`, and are then
//! pushed through one of three normal-form pipelines:
//!
//! - [`lens_p2::kbsm_class_p2`]: coordinates over the finite basis
//!   `Λ_{ν₁}` of `L(β₁,2)`;
//! - [`lens_4k::kbsm_class_4k`]: coordinates over `Σ''_{ν₁,ν₂}` of
//!   `L(4k,2k+1)`, `k ≠ 0`;
//! - [`s2xs1::kbsm_class_s2xs1`]: the free-plus-torsion cyclic decomposition
//!   of `S²×S¹`, with residues modulo `(1-A^N)`.
//!
//! All arithmetic is exact over `Z[A^{±1}]`, and every algebraic identity the
//! construction relies on ships with a machine check (see the `verify_*`
//! functions and the acceptance test suite).

pub mod annulus;
pub mod error;
pub mod expr;
pub mod laurent;
pub mod lens_4k;
pub mod lens_p2;
pub mod s2xs1;
pub mod words;

pub use annulus::LambdaPoly;
pub use error::{Error, ParseError};
pub use laurent::{CyclicQuotientElem, LaurentPoly};
pub use words::{Nu1Context, SigmaVector, SkeinVector, Word};
