//! Laurent polynomials with integer coefficients, the working ring of the
//! fraction-free eliminator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::qfield::upoly::UPoly;
use crate::qfield::LaurentScalar;

/// `Σ coeffs[k] q^(low + k)`, with nonzero first and last coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZLaurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl ZLaurent {
    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: e, coeffs: vec![c] }
    }

    fn from_raw(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            low: low + lead_zeros as i32,
            coeffs,
        }
    }

    /// Splits `a = zl / den` with `den` a positive integer.
    pub fn from_laurent(a: &LaurentScalar) -> (Self, BigInt) {
        let Some(lo) = a.min_exp() else {
            return (Self::zero(), BigInt::one());
        };
        let hi = a.max_exp().unwrap();
        let den = a
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in a.terms() {
            coeffs[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        (Self::from_raw(lo, coeffs), den)
    }

    pub fn to_laurent(&self) -> LaurentScalar {
        LaurentScalar::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.low + k as i32, BigRational::from_integer(c.clone()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// `Some((c, e))` when this is the single term `c q^e`.
    pub fn as_term(&self) -> Option<(&BigInt, i32)> {
        (self.coeffs.len() == 1).then(|| (&self.coeffs[0], self.low))
    }

    pub fn lead_sign_negative(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_negative())
    }

    pub fn neg(&self) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn shift(&self, k: i32) -> Self {
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn div_int(&self, c: &BigInt) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = other.as_term() {
            return Self {
                low: self.low + e,
                coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_raw(self.low + other.low, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.neg();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i32).max(other.low + other.coeffs.len() as i32);
        let mut out = vec![BigInt::zero(); (high - low) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[(other.low - low) as usize + k] -= c;
        }
        Self::from_raw(low, out)
    }

    /// Positive gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn to_upoly(&self) -> UPoly {
        UPoly(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Primitive integer polynomial with positive leading coefficient,
    /// proportional to `p` over ℚ.
    fn from_upoly_primitive(p: &UPoly) -> Self {
        let den = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs: Vec<BigInt> = p.0.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let z = Self::from_raw(0, coeffs);
        let g = z.content();
        let z = if g.is_one() || g.is_zero() { z } else { z.div_int(&g) };
        if z.lead_sign_negative() {
            z.neg()
        } else {
            z
        }
    }

    /// Primitive gcd in `ℤ[q]`, with the `q`-power factor dropped
    /// (it is a unit of the Laurent ring).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return Self::from_upoly_primitive(&b.to_upoly());
        }
        if b.is_zero() {
            return Self::from_upoly_primitive(&a.to_upoly());
        }
        Self::from_upoly_primitive(&UPoly::gcd(&a.to_upoly(), &b.to_upoly()))
    }

    /// Exact quotient by a primitive divisor, up to a power of `q`.
    pub fn div_exact(&self, d: &Self) -> Self {
        if let Some((c, e)) = d.as_term() {
            return self.div_int(c).shift(-e);
        }
        let (quot, rem) = self.to_upoly().div_rem(&d.to_upoly());
        debug_assert!(rem.is_zero(), "inexact division");
        let coeffs: Vec<BigInt> = quot.0.iter().map(|c| c.to_integer()).collect();
        Self::from_raw(self.low - d.low, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(low: i32, cs: &[i64]) -> ZLaurent {
        ZLaurent::from_raw(low, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = z(-1, &[1, 0, -1]); // q^-1 - q
        let b = z(0, &[1, 1]);
        assert_eq!(a.mul(&b), z(-1, &[1, 1, -1, -1]));
        assert_eq!(a.sub(&a), ZLaurent::zero());
        assert_eq!(z(0, &[0, 0, 2]), ZLaurent::monomial(2.into(), 2));
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn gcd_and_content() {
        let a = z(0, &[2, 4]);
        assert_eq!(a.content(), BigInt::from(2));
        // (1 - q)(1 + q) and (1 + q) q^3
        let g = ZLaurent::gcd(&z(0, &[1, 0, -1]), &z(3, &[1, 1]));
        assert_eq!(g, z(0, &[1, 1]));
    }

    #[test]
    fn laurent_round_trip() {
        let l = LaurentScalar::q_hat().scale(&BigRational::new(3.into(), 2.into()));
        let (zl, den) = ZLaurent::from_laurent(&l);
        assert_eq!(den, BigInt::from(2));
        assert_eq!(zl.to_laurent(), l.scale(&BigRational::from_integer(2.into())));
    }
}
