//! Convex-geometry toolkit for polytopes in John's, Löwner's and minimal
//! surface area position.
//!
//! The crate is organised in four layers:
//!
//! * [`polytope`]: exact polytope geometry (H/V representations, sections,
//!   projections, polarity, volumes, surface area measure, zonotopes).
//! * [`positions`]: maximal inscribed / minimal enclosing ellipsoids, the
//!   contact-point decompositions of the identity, their lifted and restricted
//!   variants, and the minimal surface area position.
//! * [`functionals`]: mean width, Wills functional, Gaussian measures and the
//!   closed-form constants they are compared against.
//! * [`harness`]: random bodies and subspaces, the inequality checkers and
//!   report emission used by the `johnsections` binary.

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod functionals;
pub mod harness;
pub mod linalg;
pub mod nnls;
pub mod polytope;
pub mod positions;

pub use error::{GeomError, Result};
