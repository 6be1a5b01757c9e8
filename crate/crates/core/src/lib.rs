//! Exact computation of the third-order Jacobsthal (J3), third-order
//! Jacobsthal-Lucas (JL3) and modified third-order Jacobsthal (K3) sequences,
//! their closed forms and generating functions, and a catalog of identities
//! that can be checked exactly over finite index ranges.
//!
//! No floating point is used anywhere: integers are arbitrary precision,
//! fractions are normalized rationals and the complex cube roots of unity are
//! handled as elements of ℚ(ω).

pub mod arith;
pub mod engines;
pub mod error;
pub mod genfun;
pub mod identities;
pub mod json;
pub mod periodic;

pub use arith::{CycQ, Integer, Rational};
pub use engines::{Engine, SequenceId};
pub use error::{ArithError, GfError, IdentityError, SeqError};
pub use genfun::{IntPolynomial, RationalGF};
pub use identities::{check, check_all, CheckParams, IdentityCheckReport, IdentityId};
