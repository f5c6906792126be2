//! Exact linear algebra on graded components of `O_q(M_mn)`: rank, span
//! membership and coefficient recovery over ℚ(q), with an optional
//! specialized path over ℚ.

mod echelon;
mod special;
mod zpoly;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

pub use echelon::Echelon;

use crate::qfield::{QFieldError, RationalScalar};
use crate::qmatrix::{graded_basis, MatrixShape, NCPoly, OrderedMonomial};
use special::{specialize_vector, QEchelon};

/// Basis-size guard used when callers do not pass their own.
pub const DEFAULT_BASIS_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vectors do not share a basis")]
    BasisMismatch,
    #[error("degree {degree} component has {size} monomials, above the limit {limit}")]
    DegreeTooLarge { degree: usize, size: usize, limit: usize },
    #[error("polynomial has terms outside the degree {degree} component")]
    OutsideBasis { degree: usize },
    #[error("coefficient recovery needs a tracking echelon")]
    TrackingDisabled,
    #[error(transparent)]
    Scalar(#[from] QFieldError),
}

/// The PBW monomials of one degree, in increasing order.
#[derive(Debug)]
pub struct GradedBasis {
    shape: MatrixShape,
    degree: usize,
    monomials: Vec<OrderedMonomial>,
    index: HashMap<OrderedMonomial, usize>,
}

/// `C(n + k - 1, k)`, the number of degree-`k` monomials in `n` variables.
pub fn graded_dimension(shape: MatrixShape, degree: usize) -> usize {
    let n = shape.num_generators();
    let mut acc: u128 = 1;
    for i in 0..degree as u128 {
        acc = acc * (n as u128 + i) / (i + 1);
    }
    acc.min(usize::MAX as u128) as usize
}

impl GradedBasis {
    pub fn new(shape: MatrixShape, degree: usize) -> Arc<Self> {
        let monomials = graded_basis(shape, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Arc::new(Self {
            shape,
            degree,
            monomials,
            index,
        })
    }

    pub fn with_limit(shape: MatrixShape, degree: usize, limit: usize) -> Result<Arc<Self>, LinalgError> {
        let size = graded_dimension(shape, degree);
        if size > limit {
            return Err(LinalgError::DegreeTooLarge { degree, size, limit });
        }
        Ok(Self::new(shape, degree))
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[OrderedMonomial] {
        &self.monomials
    }

    pub fn monomial(&self, k: usize) -> &OrderedMonomial {
        &self.monomials[k]
    }

    pub fn position(&self, m: &OrderedMonomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn same_as(&self, other: &GradedBasis) -> bool {
        std::ptr::eq(self, other) || (self.shape == other.shape && self.degree == other.degree)
    }
}

/// Coefficients of a homogeneous element against a [`GradedBasis`],
/// stored sparsely.
#[derive(Debug, Clone)]
pub struct CoefficientVector {
    basis: Arc<GradedBasis>,
    entries: Vec<(usize, RationalScalar)>,
}

impl PartialEq for CoefficientVector {
    fn eq(&self, other: &Self) -> bool {
        self.basis.same_as(&other.basis) && self.entries == other.entries
    }
}

impl CoefficientVector {
    pub fn zero(basis: &Arc<GradedBasis>) -> Self {
        Self {
            basis: basis.clone(),
            entries: Vec::new(),
        }
    }

    pub fn from_poly(basis: &Arc<GradedBasis>, p: &NCPoly) -> Result<Self, LinalgError> {
        if p.shape() != basis.shape() {
            return Err(LinalgError::BasisMismatch);
        }
        let mut entries = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            let k = basis
                .position(m)
                .ok_or(LinalgError::OutsideBasis { degree: basis.degree() })?;
            entries.push((k, RationalScalar::from_laurent(c.clone())));
        }
        entries.sort_by_key(|e| e.0);
        Ok(Self {
            basis: basis.clone(),
            entries,
        })
    }

    /// From a dense coefficient list aligned with the basis.
    pub fn from_entries(basis: &Arc<GradedBasis>, dense: Vec<RationalScalar>) -> Result<Self, LinalgError> {
        if dense.len() != basis.len() {
            return Err(LinalgError::BasisMismatch);
        }
        let entries = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(Self {
            basis: basis.clone(),
            entries,
        })
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sparse_entries(&self) -> &[(usize, RationalScalar)] {
        &self.entries
    }

    pub fn entries(&self) -> Vec<RationalScalar> {
        let mut out = vec![RationalScalar::zero(); self.basis.len()];
        for (k, c) in &self.entries {
            out[*k] = c.clone();
        }
        out
    }

    pub fn add_scaled(&self, other: &Self, c: &RationalScalar) -> Result<Self, LinalgError> {
        if !self.basis.same_as(&other.basis) {
            return Err(LinalgError::BasisMismatch);
        }
        let mut dense = self.entries();
        for (k, e) in &other.entries {
            dense[*k] = dense[*k].add(&e.mul(c));
        }
        Self::from_entries(&self.basis, dense)
    }

    pub fn scale(&self, c: &RationalScalar) -> Self {
        Self {
            basis: self.basis.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, e)| (*k, e.mul(c)))
                .filter(|(_, e)| !e.is_zero())
                .collect(),
        }
    }
}

/// `Σ c_i v_i`.
pub fn recombine(spanning: &[CoefficientVector], coeffs: &[RationalScalar], basis: &Arc<GradedBasis>) -> Result<CoefficientVector, LinalgError> {
    let mut acc = CoefficientVector::zero(basis);
    for (v, c) in spanning.iter().zip(coeffs) {
        acc = acc.add_scaled(v, c)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ScalarMode {
    #[default]
    Exact,
    /// Work over ℚ at each listed value of `q`.
    Specialize(Vec<BigRational>),
}

fn shared_basis<'a>(vectors: impl IntoIterator<Item = &'a CoefficientVector>) -> Result<Option<Arc<GradedBasis>>, LinalgError> {
    let mut basis: Option<Arc<GradedBasis>> = None;
    for v in vectors {
        match &basis {
            None => basis = Some(v.basis.clone()),
            Some(b) if !b.same_as(&v.basis) => return Err(LinalgError::BasisMismatch),
            _ => {}
        }
    }
    Ok(basis)
}

/// Ranks at each usable `q0`, skipping values where some entry has a pole.
fn specialized_ranks(vectors: &[CoefficientVector], q0s: &[BigRational]) -> Result<Vec<(usize, QEchelon)>, LinalgError> {
    let mut out = Vec::new();
    'values: for (k, q0) in q0s.iter().enumerate() {
        let mut ech = QEchelon::default();
        for v in vectors {
            match specialize_vector(v, q0)? {
                Some(w) => {
                    ech.insert(w);
                }
                None => continue 'values,
            }
        }
        out.push((k, ech));
    }
    Ok(out)
}

/// Row rank of `vectors`.
///
/// In specialize mode this is the largest rank seen at the listed values,
/// a lower bound for the exact rank; with no usable value it falls back to
/// exact elimination.
pub fn rank(vectors: &[CoefficientVector], mode: &ScalarMode) -> Result<usize, LinalgError> {
    let Some(basis) = shared_basis(vectors)? else {
        return Ok(0);
    };
    if let ScalarMode::Specialize(q0s) = mode {
        let ranks = specialized_ranks(vectors, q0s)?;
        if let Some(r) = ranks.iter().map(|(_, e)| e.rank()).max() {
            return Ok(r);
        }
    }
    let mut ech = Echelon::new(basis);
    for v in vectors {
        ech.insert(v)?;
    }
    Ok(ech.rank())
}

/// Coefficients expressing `v` in the span of `spanning`, or `None`.
///
/// In specialize mode a negative answer at a value where the spanning set
/// attains its largest specialized rank is returned directly; positive
/// answers are always confirmed exactly.
pub fn span_membership(
    v: &CoefficientVector,
    spanning: &[CoefficientVector],
    mode: &ScalarMode,
) -> Result<Option<Vec<RationalScalar>>, LinalgError> {
    shared_basis(spanning.iter().chain(std::iter::once(v)))?;
    if v.is_zero() {
        return Ok(Some(vec![RationalScalar::zero(); spanning.len()]));
    }
    if let ScalarMode::Specialize(q0s) = mode {
        let ranks = specialized_ranks(spanning, q0s)?;
        let best = ranks.iter().map(|(_, e)| e.rank()).max();
        for (k, ech) in &ranks {
            if Some(ech.rank()) != best {
                continue;
            }
            if let Some(w) = specialize_vector(v, &q0s[*k])? {
                if !ech.contains(w) {
                    return Ok(None);
                }
            }
        }
    }
    let mut ech = Echelon::with_tracking(v.basis.clone());
    for s in spanning {
        ech.insert(s)?;
    }
    ech.express(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{default_q_values, LaurentScalar};
    use proptest::prelude::*;

    fn shape(m: usize, n: usize) -> MatrixShape {
        MatrixShape::new(m, n).unwrap()
    }

    fn x(s: MatrixShape, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(s, i, j).unwrap()
    }

    fn det2() -> NCPoly {
        let s = shape(2, 2);
        x(s, 1, 1)
            .mul(&x(s, 2, 2))
            .try_sub(&x(s, 1, 2).mul(&x(s, 2, 1)).scale(&LaurentScalar::q()))
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        let s = shape(2, 2);
        let b = GradedBasis::new(s, 2);
        let d = CoefficientVector::from_poly(&b, &det2()).unwrap();
        assert_eq!(rank(std::slice::from_ref(&d), &ScalarMode::Exact).unwrap(), 1);

        let units: Vec<_> = b
            .monomials()
            .iter()
            .map(|m| CoefficientVector::from_poly(&b, &NCPoly::monomial(s, m.clone())).unwrap())
            .collect();
        assert_eq!(units.len(), 10);
        assert_eq!(rank(&units, &ScalarMode::Exact).unwrap(), 10);

        // chains of 1×1 minors of length 2, plus the determinant
        let chains = [
            ((1, 1), (1, 1)),
            ((1, 1), (1, 2)),
            ((1, 1), (2, 1)),
            ((1, 1), (2, 2)),
            ((1, 2), (1, 2)),
            ((1, 2), (2, 2)),
            ((2, 1), (2, 1)),
            ((2, 1), (2, 2)),
            ((2, 2), (2, 2)),
        ];
        let mut std = vec![CoefficientVector::from_poly(&b, &det2()).unwrap()];
        for (a, c) in chains {
            std.push(CoefficientVector::from_poly(&b, &x(s, a.0, a.1).mul(&x(s, c.0, c.1))).unwrap());
        }
        assert_eq!(std.len(), 10);
        assert_eq!(rank(&std, &ScalarMode::Exact).unwrap(), 10);
    }

    #[test]
    fn membership_examples() {
        let s = shape(2, 2);
        let b = GradedBasis::new(s, 2);
        let d = CoefficientVector::from_poly(&b, &det2()).unwrap();
        let zero = CoefficientVector::zero(&b);
        assert_eq!(
            span_membership(&zero, std::slice::from_ref(&d), &ScalarMode::Exact).unwrap(),
            Some(vec![RationalScalar::zero()])
        );
        let c = span_membership(&d, std::slice::from_ref(&d), &ScalarMode::Exact).unwrap().unwrap();
        assert!(c[0].is_one());
        let v = CoefficientVector::from_poly(&b, &x(s, 1, 1).mul(&x(s, 2, 2))).unwrap();
        assert_eq!(span_membership(&v, std::slice::from_ref(&d), &ScalarMode::Exact).unwrap(), None);
        let special = ScalarMode::Specialize(default_q_values());
        assert_eq!(span_membership(&v, &[d], &special).unwrap(), None);
    }

    #[test]
    fn basis_mismatch() {
        let b2 = GradedBasis::new(shape(2, 2), 2);
        let b1 = GradedBasis::new(shape(2, 2), 1);
        let v = CoefficientVector::from_poly(&b2, &det2()).unwrap();
        let w = CoefficientVector::from_poly(&b1, &x(shape(2, 2), 1, 1)).unwrap();
        assert_eq!(rank(&[v.clone(), w.clone()], &ScalarMode::Exact), Err(LinalgError::BasisMismatch));
        assert_eq!(span_membership(&v, &[w], &ScalarMode::Exact), Err(LinalgError::BasisMismatch));
        assert!(matches!(
            GradedBasis::with_limit(shape(3, 3), 6, 1000),
            Err(LinalgError::DegreeTooLarge { size: 3003, .. })
        ));
        assert!(matches!(
            CoefficientVector::from_poly(&b1, &det2()),
            Err(LinalgError::OutsideBasis { .. })
        ));
    }

    #[test]
    fn rational_entries() {
        let s = shape(2, 2);
        let b = GradedBasis::new(s, 1);
        let one_plus_q = LaurentScalar::one() + LaurentScalar::q();
        let inv = RationalScalar::new(LaurentScalar::one(), one_plus_q.clone()).unwrap();
        let mut dense = vec![RationalScalar::zero(); 4];
        dense[0] = inv.clone();
        dense[1] = RationalScalar::one();
        let v = CoefficientVector::from_entries(&b, dense).unwrap();
        let mut dense = vec![RationalScalar::zero(); 4];
        dense[0] = RationalScalar::one();
        dense[1] = RationalScalar::from_laurent(one_plus_q);
        let w = CoefficientVector::from_entries(&b, dense).unwrap();
        let c = span_membership(&v, std::slice::from_ref(&w), &ScalarMode::Exact).unwrap().unwrap();
        assert_eq!(c[0], inv);
        assert_eq!(recombine(&[w], &c, &b).unwrap(), v);
    }

    fn lc(c: i64, e: i32) -> LaurentScalar {
        LaurentScalar::monomial(BigRational::from_integer(c.into()), e)
    }

    fn arb_coeff() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-2i32..=2, -2i64..=2), 0..3).prop_map(|ts| {
            ts.into_iter().fold(LaurentScalar::zero(), |acc, (e, c)| acc + lc(c, e))
        })
    }

    /// Small systems in the degree-1 component of `O_q(M_22)` (4 columns),
    /// biased towards dependencies by adding combinations of earlier rows.
    fn arb_system() -> impl Strategy<Value = Vec<Vec<LaurentScalar>>> {
        (
            prop::collection::vec(prop::collection::vec(arb_coeff(), 4), 1..4),
            prop::collection::vec((arb_coeff(), arb_coeff()), 0..3),
        )
            .prop_map(|(mut rows, combos)| {
                for (a, b) in combos {
                    let r0 = rows[0].clone();
                    let rl = rows[rows.len() - 1].clone();
                    rows.push(r0.iter().zip(&rl).map(|(x, y)| &(&a * x) + &(&b * y)).collect());
                }
                rows
            })
    }

    fn to_vectors(b: &Arc<GradedBasis>, rows: &[Vec<LaurentScalar>]) -> Vec<CoefficientVector> {
        rows.iter()
            .map(|r| {
                CoefficientVector::from_entries(b, r.iter().cloned().map(RationalScalar::from_laurent).collect()).unwrap()
            })
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn exact_rank_matches_specialized(rows in arb_system(), seeds in prop::collection::vec((1i64..20, 1i64..20), 3)) {
            let b = GradedBasis::new(shape(2, 2), 1);
            let vs = to_vectors(&b, &rows);
            let q0s: Vec<BigRational> = seeds
                .iter()
                .map(|&(n, d)| BigRational::new((n + 20).into(), d.into()))
                .collect();
            let exact = rank(&vs, &ScalarMode::Exact).unwrap();
            prop_assert_eq!(exact, rank(&vs, &ScalarMode::Specialize(q0s)).unwrap());
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(rows in arb_system(), c in arb_coeff()) {
            let b = GradedBasis::new(shape(2, 2), 1);
            let vs = to_vectors(&b, &rows);
            let r = rank(&vs, &ScalarMode::Exact).unwrap();
            let mut rev: Vec<_> = vs.iter().rev().cloned().collect();
            if !c.is_zero() {
                rev[0] = rev[0].scale(&RationalScalar::from_laurent(c));
            }
            prop_assert_eq!(r, rank(&rev, &ScalarMode::Exact).unwrap());
        }

        #[test]
        fn membership_witness_recombines(rows in arb_system(), k in 0usize..3) {
            let b = GradedBasis::new(shape(2, 2), 1);
            let vs = to_vectors(&b, &rows);
            let target = vs[vs.len() - 1 - k.min(vs.len() - 1)].clone();
            let span = &vs[..vs.len() - 1];
            if let Some(c) = span_membership(&target, span, &ScalarMode::Exact).unwrap() {
                prop_assert_eq!(recombine(span, &c, &b).unwrap(), target);
            } else {
                prop_assert!(rank(span, &ScalarMode::Exact).unwrap() < rank(&vs, &ScalarMode::Exact).unwrap());
            }
        }
    }
}
