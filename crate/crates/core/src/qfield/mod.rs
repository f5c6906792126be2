//! Exact scalars: Laurent polynomials ℚ[q, q⁻¹] and the field ℚ(q).
//!
//! `q` is an indeterminate throughout, so every identity verified here holds
//! for all specializations of `q` at which it is defined.

mod laurent;
mod rational;
pub(crate) mod upoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use laurent::LaurentScalar;
pub(crate) use laurent::fmt_term_abs;
pub use rational::RationalScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QFieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtSpecialization(BigRational),
    #[error("cannot specialize at q = 0")]
    ZeroSpecialization,
    #[error("scalar is not invertible in Q[q, q^-1]")]
    NotInvertible,
}

/// Specialization points used when no explicit list is configured. None of
/// them is 0, ±1 or a root of unity.
pub const DEFAULT_Q_VALUES: [(i64, i64); 3] = [(7, 3), (5, 2), (-4, 7)];

pub fn default_q_values() -> Vec<BigRational> {
    DEFAULT_Q_VALUES
        .iter()
        .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    Add,
    Mul,
    Div,
    Neg,
}

/// Field arithmetic on ℚ(q). `Neg` ignores `b`.
pub fn scalar_combine(
    kind: CombineKind,
    a: &RationalScalar,
    b: &RationalScalar,
) -> Result<RationalScalar, QFieldError> {
    match kind {
        CombineKind::Add => Ok(a.add(b)),
        CombineKind::Mul => Ok(a.mul(b)),
        CombineKind::Div => a.div(b),
        CombineKind::Neg => Ok(a.neg()),
    }
}

/// The value of a scalar at a rational point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub value: BigRational,
    /// Set when `q0 = ±1`, where quantum relations degenerate.
    pub degenerate: bool,
}

pub fn specialize(a: &RationalScalar, q0: &BigRational) -> Result<Specialization, QFieldError> {
    if q0.is_zero() {
        return Err(QFieldError::ZeroSpecialization);
    }
    let den = a.denom().eval(q0);
    if den.is_zero() {
        return Err(QFieldError::PoleAtSpecialization(q0.clone()));
    }
    Ok(Specialization {
        value: a.numer().eval(q0) / den,
        degenerate: q0.abs().is_one(),
    })
}
