//! Exact plane geometry: intersection cycles, verification of configuration
//! hypotheses, curves through point sets and the bundled conic families.

mod curves;
mod intersect;
mod points;
mod verify;

pub use curves::{conic_is_smooth, curve_through_points, orbit_columns, CurveFit, Family, FamilyData};
pub use intersect::{intersection_cycle, IntersectionCycle, IntersectionPoint};
pub use points::PointOrbit;
pub use verify::{resolve, verify_configuration, Check, VerifyReport};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("input error: {0}")]
    Input(String),
    #[error("curve equation is not homogeneous")]
    NotHomogeneous,
    #[error("the curves share a component")]
    CommonComponent,
    #[error("no generic projection found")]
    ProjectionFailed,
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error("configuration check failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
