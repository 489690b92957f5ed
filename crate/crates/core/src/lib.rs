//! Exact inverse-system computations for graded artinian Gorenstein algebras.
//!
//! The crate computes Hilbert functions of apolar algebras of forms through
//! catalecticant ranks, restricts forms modulo linear forms, runs randomized
//! checks of the statements that drive the descent `f_e(r-1) <= f_e(r)`, and
//! builds certified tables of upper bounds on the least degree-2 entry of a
//! Gorenstein h-vector in socle degree 4 and 5.

pub mod apolarity;
pub mod cache;
pub mod error;
pub mod field;
pub mod hfsearch;
pub mod linalg;
pub mod poly;
pub mod restriction;
pub mod rng;

pub use apolarity::{apply_operator, catalecticant, codimension, hilbert_function, CatalecticantMatrix, HilbertFunction};
pub use error::{Error, Result};
pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use hfsearch::{FBoundEntry, GicReport};
pub use poly::{gcd_forms, parse_form, Form, Monomial};
