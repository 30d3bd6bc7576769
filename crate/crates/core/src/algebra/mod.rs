//! Scalars, quaternions and dual quaternions.

mod dual;
mod quaternion;
mod scalar;

pub use dual::{DualNumber, DualQuaternion};
pub use quaternion::Quaternion;
pub use scalar::{
    parse_decimal, parse_rational, rational_snap, Mode, Rational, Ring, Scalar, Tolerance, SNAP_EPS,
    SNAP_MAX_DEN,
};
