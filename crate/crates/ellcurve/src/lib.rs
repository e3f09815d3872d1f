//! Elliptic curves in Weierstrass form: group law over any field, integral
//! short models, division polynomials, twists, reduction and point counts.

mod divpoly;
mod model;
mod reduce;
mod weierstrass;

pub use divpoly::{division_poly, map_poly, DivisionPolys, DEFAULT_DIVPOLY_CAP};
pub use model::{CurveJson, CurveModel, ShortForm};
pub use reduce::{enumerate_points, order_over_extension, reduce_mod_q, CountOptions, ReducedCurve};
pub use weierstrass::{Point, PointJson, Weierstrass};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcError {
    #[error("singular curve: discriminant is zero")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit: {0}")]
    Resource(String),
}
