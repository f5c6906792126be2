//! Dense univariate polynomials over ℚ, used for gcd reduction of
//! rational functions.

use num_rational::BigRational;
use num_traits::Zero;

use super::LaurentScalar;

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut self) -> Self {
        while self.0.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.0.last()
    }

    /// Splits a Laurent polynomial as `q^shift * poly` with `poly(0) != 0`.
    pub fn from_laurent(a: &LaurentScalar) -> (UPoly, i32) {
        let Some(lo) = a.min_exp() else {
            return (UPoly::zero(), 0);
        };
        let hi = a.max_exp().unwrap_or(lo);
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize + 1];
        for (e, c) in a.terms() {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (UPoly(coeffs).trim(), lo)
    }

    pub fn to_laurent(&self, shift: i32) -> LaurentScalar {
        LaurentScalar::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i32 + shift, c.clone())),
        )
    }

    pub fn scale(&self, c: &BigRational) -> UPoly {
        UPoly(self.0.iter().map(|a| a * c).collect()).trim()
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Euclidean division `self = quot * d + rem`.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly(quot).trim(), UPoly(rem).trim())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> UPoly {
        UPoly(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect()).trim()
    }

    #[test]
    fn long_division() {
        // (q^2 - 1) / (q - 1) = q + 1
        let (quot, rem) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1]));
        assert_eq!(quot, p(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(2q^2 - 2, 3q - 3) = q - 1
        assert_eq!(UPoly::gcd(&p(&[-2, 0, 2]), &p(&[-3, 3])), p(&[-1, 1]));
        assert_eq!(UPoly::gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }
}
