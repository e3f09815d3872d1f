//! Number fields Q, Q(ζ_{p^k}) and Q(√d) with exact element arithmetic,
//! Galois action, polynomial root finding and the Dedekind criterion.

mod dedekind;
mod field;
mod roots;

pub use dedekind::{dedekind_ramified, DedekindVerdict};
pub use field::{cyclotomic_poly_prime_power, FieldElement, FieldSpec, NfElem, NumberField};
pub use roots::{
    coordinate_bounds, is_inert, is_square, roots_in_field, roots_of_rational_poly, RootOptions,
    RootReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("internal error: {0}")]
    Internal(String),
}
