//! Elliptic curves over Q.

mod curve;
mod point;
mod torsion;

pub use curve::{kronecker_odd, CurveInput, EllCurve};
pub use point::Point;
pub use torsion::{torsion_bound, torsion_points};

use num::BigRational;

/// Membership in the list of the 13 rational CM j-invariants.
pub fn is_cm(j: &BigRational) -> bool {
    crate::atlas::Atlas::embedded().is_cm(j)
}
