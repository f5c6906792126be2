use std::fmt;

use num_rational::BigRational;

use super::upoly::UPoly;
use super::{LaurentScalar, QFieldError};

/// An element of the rational function field ℚ(q).
///
/// Canonical form: the denominator is a monic polynomial in `q` with nonzero
/// constant term, coprime to the numerator. All powers of `q` live in the
/// numerator, so two values are equal iff their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentScalar,
    den: LaurentScalar,
}

impl RationalScalar {
    pub fn new(num: LaurentScalar, den: LaurentScalar) -> Result<Self, QFieldError> {
        if den.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (n, n_shift) = UPoly::from_laurent(&num);
        let (d, d_shift) = UPoly::from_laurent(&den);
        let (n, d) = if d.is_constant() {
            (n, d)
        } else {
            let g = UPoly::gcd(&n, &d);
            if g.is_constant() {
                (n, d)
            } else {
                (n.div_rem(&g).0, d.div_rem(&g).0)
            }
        };
        let lead_inv = d.lead().expect("nonzero denominator").recip();
        Ok(Self {
            num: n.scale(&lead_inv).to_laurent(n_shift - d_shift),
            den: d.scale(&lead_inv).to_laurent(0),
        })
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentScalar::zero(),
            den: LaurentScalar::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentScalar::one())
    }

    pub fn from_laurent(num: LaurentScalar) -> Self {
        Self {
            num,
            den: LaurentScalar::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentScalar::from_rational(c))
    }

    pub fn numer(&self) -> &LaurentScalar {
        &self.num
    }

    pub fn denom(&self) -> &LaurentScalar {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, when the denominator is 1.
    pub fn to_laurent(&self) -> Option<LaurentScalar> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_laurent(&self.num * &rhs.num);
        }
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }

    pub fn recip(&self) -> Result<Self, QFieldError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, QFieldError> {
        if rhs.is_zero() {
            return Err(QFieldError::DivisionByZero);
        }
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn mul_laurent(&self, rhs: &LaurentScalar) -> Self {
        self.mul(&Self::from_laurent(rhs.clone()))
    }
}

impl From<LaurentScalar> for RationalScalar {
    fn from(a: LaurentScalar) -> Self {
        Self::from_laurent(a)
    }
}

impl fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalScalar({self})")
    }
}

impl Default for RationalScalar {
    fn default() -> Self {
        Self::zero()
    }
}
