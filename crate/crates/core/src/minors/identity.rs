use std::collections::BTreeSet;
use std::fmt;

use super::{minor_poly, MinorError, MinorIndex};
use crate::qfield::LaurentScalar;
use crate::qmatrix::{MatrixShape, NCPoly};

/// One summand `coeff · μ_1 μ_2 ⋯ μ_k` of a minor identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityTerm {
    pub coeff: LaurentScalar,
    pub factors: Vec<MinorIndex>,
}

/// A linear combination of products of quantum minors, read as the claim
/// that it equals zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorIdentity {
    pub shape: MatrixShape,
    pub terms: Vec<IdentityTerm>,
}

impl MinorIdentity {
    pub fn new(shape: MatrixShape) -> Self {
        Self {
            shape,
            terms: Vec::new(),
        }
    }

    pub fn push(&mut self, coeff: LaurentScalar, factors: Vec<MinorIndex>) {
        self.terms.push(IdentityTerm { coeff, factors });
    }

    /// Expands every factor and multiplies left to right.
    pub fn evaluate(&self) -> Result<NCPoly, MinorError> {
        let mut out = NCPoly::zero(self.shape);
        for term in &self.terms {
            out.add_scaled(&self.evaluate_product(&term.factors)?, &term.coeff);
        }
        Ok(out)
    }

    pub fn evaluate_product(&self, factors: &[MinorIndex]) -> Result<NCPoly, MinorError> {
        let mut prod = NCPoly::one(self.shape);
        for f in factors {
            prod = prod.mul(&*minor_poly(self.shape, f)?);
        }
        Ok(prod)
    }

    pub fn holds(&self) -> Result<bool, MinorError> {
        Ok(self.evaluate()?.is_zero())
    }

    fn row_sets(&self) -> impl Iterator<Item = &[usize]> {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|f| f.rows()))
    }

    fn col_sets(&self) -> impl Iterator<Item = &[usize]> {
        self.terms.iter().flat_map(|t| t.factors.iter().map(|f| f.cols()))
    }
}

impl fmt::Display for MinorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            for m in &t.factors {
                write!(f, "{m}")?;
            }
        }
        write!(f, " = 0")
    }
}

fn count_below(set: &[usize], x: usize) -> i32 {
    set.iter().filter(|&&y| y < x).count() as i32
}

/// The row form of the quantum Laplace relation, as `LHS - RHS`:
///
/// `Σ_{j∈J} (-q)^{|[1,j)∩J|} x_rj [I | J∖{j}]`
/// `= (-q)^{|[1,r)∩I|} [I⊔{r} | J]` if `r ∉ I`, and `0` if `r ∈ I`.
pub fn laplace_relation(
    shape: MatrixShape,
    rows: &[usize],
    cols: &[usize],
    r: usize,
) -> Result<MinorIdentity, MinorError> {
    if cols.len() != rows.len() + 1 {
        return Err(MinorError::SizeMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let base = MinorIndex::from_sets(rows.to_vec(), rows.to_vec())?;
    let cols_set = MinorIndex::from_sets(cols.to_vec(), cols.to_vec())?;
    let (rows, cols) = (base.rows().to_vec(), cols_set.rows().to_vec());
    MinorIndex::single(r, 1).check_fits(MatrixShape::new(shape.m(), 1)?)?;
    let mut id = MinorIdentity::new(shape);
    for &j in &cols {
        let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
        let minor = MinorIndex::new(rows.clone(), rest)?;
        minor.check_fits(shape)?;
        id.push(
            LaurentScalar::neg_q_pow(count_below(&cols, j)),
            vec![MinorIndex::single(r, j), minor],
        );
    }
    if !rows.contains(&r) {
        let mut big_rows = rows.clone();
        big_rows.push(r);
        let big = MinorIndex::from_sets(big_rows, cols)?;
        id.push(-LaurentScalar::neg_q_pow(count_below(&rows, r)), vec![big]);
    }
    Ok(id)
}

/// The column form, obtained from [`laplace_relation`] by transposition:
///
/// `Σ_{i∈I} (-q)^{|[1,i)∩I|} x_is [I∖{i} | J]`
/// `= (-q)^{|[1,s)∩J|} [I | J⊔{s}]` if `s ∉ J`, and `0` if `s ∈ J`.
pub fn laplace_relation_columns(
    shape: MatrixShape,
    rows: &[usize],
    cols: &[usize],
    s: usize,
) -> Result<MinorIdentity, MinorError> {
    if rows.len() != cols.len() + 1 {
        return Err(MinorError::SizeMismatch {
            rows: rows.len(),
            cols: cols.len(),
        });
    }
    let rows_set = MinorIndex::from_sets(rows.to_vec(), rows.to_vec())?;
    let base = MinorIndex::from_sets(cols.to_vec(), cols.to_vec())?;
    let (rows, cols) = (rows_set.rows().to_vec(), base.cols().to_vec());
    MinorIndex::single(1, s).check_fits(MatrixShape::new(1, shape.n())?)?;
    let mut id = MinorIdentity::new(shape);
    for &i in &rows {
        let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != i).collect();
        let minor = MinorIndex::new(rest, cols.clone())?;
        minor.check_fits(shape)?;
        id.push(
            LaurentScalar::neg_q_pow(count_below(&rows, i)),
            vec![MinorIndex::single(i, s), minor],
        );
    }
    if !cols.contains(&s) {
        let mut big_cols = cols.clone();
        big_cols.push(s);
        let big = MinorIndex::from_sets(rows, big_cols)?;
        id.push(-LaurentScalar::neg_q_pow(count_below(&cols, s)), vec![big]);
    }
    Ok(id)
}

/// Replaces every factor `[I|J]` by `[I⊔A′ | J⊔B′]`, keeping coefficients.
///
/// The result is only a candidate identity; callers confirm it by
/// evaluation.
pub fn muir_extend(
    identity: &MinorIdentity,
    extra_rows: &[usize],
    extra_cols: &[usize],
    target: MatrixShape,
) -> Result<MinorIdentity, MinorError> {
    if extra_rows.len() != extra_cols.len() {
        return Err(MinorError::SizeMismatch {
            rows: extra_rows.len(),
            cols: extra_cols.len(),
        });
    }
    let ar: BTreeSet<usize> = extra_rows.iter().copied().collect();
    let bc: BTreeSet<usize> = extra_cols.iter().copied().collect();
    if ar.len() != extra_rows.len() || bc.len() != extra_cols.len() {
        return Err(MinorError::OverlapError);
    }
    if identity.row_sets().any(|rs| rs.iter().any(|r| ar.contains(r)))
        || identity.col_sets().any(|cs| cs.iter().any(|c| bc.contains(c)))
    {
        return Err(MinorError::OverlapError);
    }
    let mut out = MinorIdentity::new(target);
    for t in &identity.terms {
        let mut factors = Vec::with_capacity(t.factors.len());
        for f in &t.factors {
            let rows = f.rows().iter().chain(extra_rows).copied().collect();
            let cols = f.cols().iter().chain(extra_cols).copied().collect();
            let ext = MinorIndex::from_sets(rows, cols)?;
            ext.check_fits(target)?;
            factors.push(ext);
        }
        out.push(t.coeff.clone(), factors);
    }
    Ok(out)
}
