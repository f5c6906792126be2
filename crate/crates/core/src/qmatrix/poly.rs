use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::rewrite::mono_times_mono;
use super::{AlgebraError, MatrixShape, OrderedMonomial};
use crate::qfield::{fmt_term_abs, LaurentScalar};

/// An element of `O_q(M_mn)` in PBW normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    shape: MatrixShape,
    terms: BTreeMap<OrderedMonomial, LaurentScalar>,
}

impl NCPoly {
    pub fn zero(shape: MatrixShape) -> Self {
        Self {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: MatrixShape) -> Self {
        Self::scalar(shape, LaurentScalar::one())
    }

    pub fn scalar(shape: MatrixShape, c: LaurentScalar) -> Self {
        Self::from_term(shape, OrderedMonomial::one(shape.num_generators()), c)
    }

    /// The generator `x_ij`.
    pub fn generator(shape: MatrixShape, i: usize, j: usize) -> Result<Self, AlgebraError> {
        let g = shape.generator_index(i, j)?;
        Ok(Self::from_term(
            shape,
            OrderedMonomial::from_word(shape.num_generators(), &[g]),
            LaurentScalar::one(),
        ))
    }

    pub fn monomial(shape: MatrixShape, mono: OrderedMonomial) -> Self {
        Self::from_term(shape, mono, LaurentScalar::one())
    }

    pub fn from_term(shape: MatrixShape, mono: OrderedMonomial, c: LaurentScalar) -> Self {
        debug_assert_eq!(mono.num_generators(), shape.num_generators());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { shape, terms }
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OrderedMonomial, &LaurentScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &OrderedMonomial) -> Option<&LaurentScalar> {
        self.terms.get(mono)
    }

    pub fn add_term(&mut self, mono: OrderedMonomial, c: LaurentScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.shape != other.shape {
            return Err(AlgebraError::ShapeMismatch(self.shape, other.shape));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &LaurentScalar) {
        debug_assert_eq!(self.shape, other.shape);
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &LaurentScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        Self {
            shape: self.shape,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Product in `O_q(M_mn)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.shape);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = mono_times_mono(self.shape, ma, mb);
                out.add_scaled(&prod, &(ca * cb));
            }
        }
        Ok(out)
    }

    /// Product of polynomials already known to share a shape.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("shape mismatch in NCPoly::mul")
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.shape), |acc, _| acc.mul(self))
    }

    /// Total degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        ds.dedup();
        ds
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        Self {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The common (row weights, column weights) when all terms share them.
    pub fn bidegree(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut it = self
            .terms
            .keys()
            .map(|m| (m.row_weights(self.shape), m.col_weights(self.shape)));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Image under `q ↦ 1`, as a commutative polynomial with rational
    /// coefficients.
    pub fn specialize_at_one(&self) -> BTreeMap<Vec<u16>, BigRational> {
        let one = BigRational::from_integer(1.into());
        let mut out: BTreeMap<Vec<u16>, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.eval(&one);
            if v.is_zero() {
                continue;
            }
            let e = out.entry(m.exponents().to_vec()).or_insert_with(BigRational::zero);
            *e += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<F: Fn(&OrderedMonomial, &LaurentScalar) -> LaurentScalar>(&self, f: F) -> Self {
        let mut out = Self::zero(self.shape);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }

    /// Drops every term whose monomial fails `keep`.
    pub fn filter_terms<F: Fn(&OrderedMonomial) -> bool>(&self, keep: F) -> Self {
        Self {
            shape: self.shape,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn fmt_monomial(&self, m: &OrderedMonomial) -> String {
        let mut parts = Vec::new();
        for (g, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (i, j) = self.shape.generator_position(g);
            if e == 1 {
                parts.push(format!("x[{i},{j}]"));
            } else {
                parts.push(format!("x[{i},{j}]^{e}"));
            }
        }
        parts.join("*")
    }
}

/// Deterministic rendering, e.g. `x[1,1]*x[2,2] - (q - q^-1)*x[1,2]*x[2,1]`.
impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, body) = match c.as_unit_term() {
                Some((e, a)) => {
                    let coeff = fmt_term_abs(e, a);
                    let body = if m.is_one() {
                        coeff
                    } else if e == 0 && a.abs() == BigRational::from_integer(1.into()) {
                        self.fmt_monomial(m)
                    } else {
                        format!("{coeff}*{}", self.fmt_monomial(m))
                    };
                    (a.is_negative(), body)
                }
                None => {
                    let lead_neg = c.terms().next_back().map(|(_, a)| a.is_negative()).unwrap_or(false);
                    let shown = if lead_neg { -c } else { c.clone() };
                    let body = if m.is_one() {
                        format!("({shown})")
                    } else {
                        format!("({shown})*{}", self.fmt_monomial(m))
                    };
                    (lead_neg, body)
                }
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]({self})", self.shape)
    }
}
