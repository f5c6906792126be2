//! Exact computations in quantum matrix algebras `O_q(M_mn)`.

#![allow(clippy::result_large_err)]

pub mod qfield;
pub mod qmatrix;
pub mod minors;
pub mod linalg;
pub mod gamma;
pub mod report;
pub mod factor;
