use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QFieldError;

/// An element of ℚ[q, q⁻¹], stored as a sparse map from exponent to coefficient.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, BigRational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(k: i32) -> Self {
        let c = if k.rem_euclid(2) == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        Self::monomial(c, k)
    }

    /// `q̂ = q - q⁻¹`.
    pub fn q_hat() -> Self {
        Self::q() - Self::q_pow(-1)
    }

    pub fn monomial(coeff: BigRational, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_integer(c: i64) -> Self {
        Self::monomial(BigRational::from_integer(BigInt::from(c)), 0)
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The `(exponent, coefficient)` pair when this is a single nonzero term,
    /// i.e. a unit of ℚ[q, q⁻¹].
    pub fn as_unit_term(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit_term().is_some()
    }

    /// Inverse of a unit (single-term) scalar.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit_term()
            .map(|(e, c)| Self::monomial(c.recip(), -e))
    }

    pub fn add_term(&mut self, exp: i32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    /// Integer power; negative exponents are only defined for units.
    pub fn pow(&self, k: i32) -> Result<Self, QFieldError> {
        if k < 0 {
            let inv = self.unit_inverse().ok_or(QFieldError::NotInvertible)?;
            return inv.pow(-k);
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Substitutes `q ↦ q⁻¹`.
    pub fn invert_q(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, a)| (-e, a.clone())).collect(),
        }
    }

    /// Exact evaluation at a nonzero rational `q0`.
    pub fn eval(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rational(q0, *e);
        }
        acc
    }
}

pub(crate) fn pow_rational(x: &BigRational, e: i32) -> BigRational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::from_integer(c)
    }
}

impl Add<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Sub<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Mul<&LaurentScalar> for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

pub(crate) fn fmt_rational_abs(c: &BigRational) -> String {
    let c = c.abs();
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_power(e: i32) -> String {
    match e {
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

/// Renders a single term without its sign, e.g. `3/2*q^-1`.
pub(crate) fn fmt_term_abs(e: i32, c: &BigRational) -> String {
    let abs = c.abs();
    if e == 0 {
        fmt_rational_abs(&abs)
    } else if abs.is_one() {
        fmt_power(e)
    } else {
        format!("{}*{}", fmt_rational_abs(&abs), fmt_power(e))
    }
}

/// Terms are printed from the highest power of `q` downwards: `q - q^-1`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", fmt_term_abs(*e, c))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentScalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_has_no_terms() {
        let a = LaurentScalar::q() - LaurentScalar::q();
        assert!(a.is_zero());
        assert_eq!(a.num_terms(), 0);
    }

    #[test]
    fn q_times_inverse_is_one() {
        let a = &LaurentScalar::q() * &LaurentScalar::q_pow(-1);
        assert!(a.is_one());
    }

    #[test]
    fn renders_highest_power_first() {
        assert_eq!(LaurentScalar::q_hat().to_string(), "q - q^-1");
        let a = LaurentScalar::one() - LaurentScalar::q_pow(-2);
        assert_eq!(a.to_string(), "1 - q^-2");
        let b = LaurentScalar::monomial(r(-3, 2), 2);
        assert_eq!(b.to_string(), "-3/2*q^2");
    }

    #[test]
    fn neg_q_powers_alternate_sign() {
        assert_eq!(LaurentScalar::neg_q_pow(2), LaurentScalar::q_pow(2));
        assert_eq!(LaurentScalar::neg_q_pow(-1), -LaurentScalar::q_pow(-1));
    }

    #[test]
    fn negative_power_needs_unit() {
        assert!(LaurentScalar::q_hat().pow(-1).is_err());
        assert_eq!(
            LaurentScalar::monomial(r(2, 1), 1).pow(-2).unwrap(),
            LaurentScalar::monomial(r(1, 4), -2)
        );
    }

    #[test]
    fn evaluation() {
        assert_eq!(LaurentScalar::q_hat().eval(&r(2, 1)), r(3, 2));
    }
}
