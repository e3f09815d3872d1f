//! Dense univariate polynomials over pluggable coefficient rings, with the
//! finite-field root-finding kernels used by the number-field root finder.

mod fp;
mod galois;
mod poly;
mod ring;
mod roots;

pub use fp::{is_irreducible, FiniteField, FiniteFieldExt, Fp};
pub use galois::GaloisRing;
pub use poly::{Poly, PolyRing, DEFAULT_KARATSUBA_THRESHOLD};
pub use ring::{Field, Integers, Rationals, Ring, Zmod};
pub use roots::{
    ddf_dividing, edf, frobenius_split_part, roots_in_extension, roots_in_finite_field,
    split_linear, split_part,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("division is not exact")]
    Inexact,
    #[error("domain error: {0}")]
    Domain(String),
}
