//! Sparse homogeneous polynomials: arithmetic, differentiation, gcd and text I/O.

mod form;
mod gcd;
mod monomial;
mod parse;

pub use form::Form;
pub use gcd::gcd_forms;
pub use monomial::{binomial, Monomial};
pub use parse::parse_form;
