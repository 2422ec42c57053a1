//! Exact computer-algebra kernel for the deformed higher-rank
//! Heisenberg-Virasoro algebras g(G, lambda), their central extensions,
//! 2-cocycles, derivations and automorphisms, together with a brute-force
//! linear-algebra oracle that recomputes classification dimensions on
//! truncated windows of the grading lattice.
//!
//! All arithmetic is exact: coefficients live in the rational-function field
//! Q(e2, ..., en), where e2, ..., en model the non-integer basis embeddings of
//! the grading group as independent indeterminates.

pub mod algebra;
pub mod automorphisms;
pub mod cocycles;
pub mod derivations;
pub mod error;
pub mod grading;
pub mod oracle;
pub mod scalars;

pub use algebra::{bracket, jacobi_check, BasisKey, Element, Report};
pub use error::{HvError, Result};
pub use grading::{AlgebraContext, GroupElem, Variant};
pub use scalars::{parse_rational, parse_scalar, rat, Rational, Scalar};
