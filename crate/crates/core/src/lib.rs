//! Factorization of motion polynomials over the dual quaternions.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod kinematics;
pub mod poly;
pub mod qpoly;
pub mod rpoly;
pub mod text;

pub use error::{Error, Result};
