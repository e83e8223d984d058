//! Exact arithmetic: angles as rational multiples of π and lengths/coordinates as
//! elements of cyclotomic fields, with decidable equality and sign.

mod approx;
mod cyclo;
mod field;
mod pirational;
mod point;

pub use approx::{DyadicInterval, Iv};
pub use cyclo::CycloNum;
pub use field::{cyclotomic_polynomial, euler_phi, field, FieldCtx};
pub use pirational::PiRational;
pub use point::{cmp_x, cmp_y, dot_sign, on_segment, orient, point_in_polygon, segments_cross_properly, segments_intersect, Point};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("incompatible field orders {0} and {1}")]
    IncompatibleOrder(u32, u32),
    #[error("value is not real")]
    NotReal,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
