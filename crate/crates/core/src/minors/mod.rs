//! Quantum minors `[I|J]`, the standard order `≤st`, the sets `Π` and `Π_γ`,
//! quantum Laplace relations and Muir-style index extension.

mod identity;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::qfield::LaurentScalar;
use crate::qmatrix::{AlgebraError, MatrixShape, NCPoly};

pub use identity::{laplace_relation, laplace_relation_columns, muir_extend, IdentityTerm, MinorIdentity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("row and column sets must be strictly ascending")]
    NotAscending,
    #[error("row set has {rows} elements but column set has {cols}")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("minor {minor} does not fit the {shape} shape")]
    IndexOutOfShape { minor: MinorIndex, shape: MatrixShape },
    #[error("the empty minor is not an element of the poset")]
    EmptyMinor,
    #[error("extension indices overlap an existing index set")]
    OverlapError,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A quantum minor `[I|J]` with `I`, `J` strictly ascending and `|I| = |J|`.
///
/// Derived ordering is by size, then rows, then columns, which is also the
/// enumeration order of [`enumerate_minors`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorIndex {
    size: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn strictly_ascending(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1]) && v.first().is_none_or(|&x| x >= 1)
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self, MinorError> {
        if rows.len() != cols.len() {
            return Err(MinorError::SizeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        if !strictly_ascending(&rows) || !strictly_ascending(&cols) {
            return Err(MinorError::NotAscending);
        }
        Ok(Self {
            size: rows.len(),
            rows,
            cols,
        })
    }

    /// Like [`new`](Self::new) but sorts its inputs first.
    pub fn from_sets(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self, MinorError> {
        rows.sort_unstable();
        cols.sort_unstable();
        Self::new(rows, cols)
    }

    pub fn empty() -> Self {
        Self {
            size: 0,
            rows: Vec::new(),
            cols: Vec::new(),
        }
    }

    pub fn single(i: usize, j: usize) -> Self {
        Self::new(vec![i], vec![j]).expect("valid 1x1 minor")
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn fits(&self, shape: MatrixShape) -> bool {
        self.rows.last().is_none_or(|&r| r <= shape.m())
            && self.cols.last().is_none_or(|&c| c <= shape.n())
    }

    pub fn check_fits(&self, shape: MatrixShape) -> Result<(), MinorError> {
        if self.fits(shape) {
            Ok(())
        } else {
            Err(MinorError::IndexOutOfShape {
                minor: self.clone(),
                shape,
            })
        }
    }

    /// Whether `x_ij` is one of the entries of this minor.
    pub fn contains_entry(&self, i: usize, j: usize) -> bool {
        self.rows.contains(&i) && self.cols.contains(&j)
    }
}

impl fmt::Display for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", join(&self.rows), join(&self.cols))
    }
}

impl fmt::Debug for MinorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorMethod {
    /// `Σ_σ (-q)^{l(σ)} x_{i_1 j_σ(1)} ⋯ x_{i_t j_σ(t)}`.
    PermSum,
    /// `Σ_k (-q)^{k-1} x_{i_1 j_k} [I∖i_1 | J∖j_k]`, recursively.
    LaplaceFirstRow,
}

thread_local! {
    static MINOR_CACHE: RefCell<HashMap<(MatrixShape, MinorIndex), Rc<NCPoly>>> = RefCell::new(HashMap::new());
}

/// Expands a quantum minor in `O_q(M_mn)`.
pub fn minor_value(shape: MatrixShape, mu: &MinorIndex, method: MinorMethod) -> Result<NCPoly, MinorError> {
    mu.check_fits(shape)?;
    Ok(match method {
        MinorMethod::PermSum => perm_sum(shape, mu),
        MinorMethod::LaplaceFirstRow => (*laplace_cached(shape, mu)).clone(),
    })
}

/// The expansion of `mu`, shared through a per-thread cache.
pub fn minor_poly(shape: MatrixShape, mu: &MinorIndex) -> Result<Rc<NCPoly>, MinorError> {
    mu.check_fits(shape)?;
    Ok(laplace_cached(shape, mu))
}

fn perm_sum(shape: MatrixShape, mu: &MinorIndex) -> NCPoly {
    let t = mu.size();
    let mut out = NCPoly::zero(shape);
    let mut perm: Vec<usize> = (0..t).collect();
    loop {
        let inversions = (0..t)
            .flat_map(|a| (a + 1..t).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut term = NCPoly::one(shape);
        for (k, &p) in perm.iter().enumerate() {
            term = term.mul(&NCPoly::generator(shape, mu.rows[k], mu.cols[p]).expect("fits"));
        }
        out.add_scaled(&term, &LaurentScalar::neg_q_pow(inversions as i32));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn laplace_cached(shape: MatrixShape, mu: &MinorIndex) -> Rc<NCPoly> {
    let key = (shape, mu.clone());
    if let Some(hit) = MINOR_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let value = if mu.is_empty() {
        NCPoly::one(shape)
    } else {
        let top = mu.rows[0];
        let rest_rows = mu.rows[1..].to_vec();
        let mut out = NCPoly::zero(shape);
        for (k, &j) in mu.cols.iter().enumerate() {
            let mut rest_cols = mu.cols.clone();
            rest_cols.remove(k);
            let sub = MinorIndex::new(rest_rows.clone(), rest_cols).expect("sub-minor");
            let term = NCPoly::generator(shape, top, j)
                .expect("fits")
                .mul(&laplace_cached(shape, &sub));
            out.add_scaled(&term, &LaurentScalar::neg_q_pow(k as i32));
        }
        out
    };
    let value = Rc::new(value);
    MINOR_CACHE.with(|c| c.borrow_mut().insert(key, value.clone()));
    value
}

/// The standard order: `[I|J] ≤st [K|L]` iff `|I| ≥ |K|` and the first
/// `|K|` entries of `I`, `J` are bounded entrywise by those of `K`, `L`.
pub fn le_st(a: &MinorIndex, b: &MinorIndex) -> Result<bool, MinorError> {
    if a.is_empty() || b.is_empty() {
        return Err(MinorError::EmptyMinor);
    }
    Ok(a.size >= b.size
        && (0..b.size).all(|s| a.rows[s] <= b.rows[s] && a.cols[s] <= b.cols[s]))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// All nonempty minors of the shape, by size, then rows, then columns.
pub fn enumerate_minors(shape: MatrixShape) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for t in 1..=shape.m().min(shape.n()) {
        for rows in subsets(shape.m(), t) {
            for cols in subsets(shape.n(), t) {
                out.push(MinorIndex::new(rows.clone(), cols).expect("valid"));
            }
        }
    }
    out
}

/// `Π_γ`: the minors of the shape that are not `≥st γ`.
pub fn pi_gamma(shape: MatrixShape, gamma: &MinorIndex) -> Result<Vec<MinorIndex>, MinorError> {
    if gamma.is_empty() {
        return Err(MinorError::EmptyMinor);
    }
    gamma.check_fits(shape)?;
    let mut out = Vec::new();
    for alpha in enumerate_minors(shape) {
        if !le_st(gamma, &alpha)? {
            out.push(alpha);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: usize, n: usize) -> MatrixShape {
        MatrixShape::new(m, n).unwrap()
    }

    fn mi(rows: &[usize], cols: &[usize]) -> MinorIndex {
        MinorIndex::new(rows.to_vec(), cols.to_vec()).unwrap()
    }

    #[test]
    fn minor_value_examples() {
        let s = shape(2, 2);
        let empty = minor_value(s, &MinorIndex::empty(), MinorMethod::PermSum).unwrap();
        assert_eq!(empty, NCPoly::one(s));
        assert_eq!(
            minor_value(s, &mi(&[2], &[1]), MinorMethod::PermSum).unwrap(),
            NCPoly::generator(s, 2, 1).unwrap()
        );
        let det = minor_value(s, &mi(&[1, 2], &[1, 2]), MinorMethod::PermSum).unwrap();
        assert_eq!(det.to_string(), "x[1,1]*x[2,2] - q*x[1,2]*x[2,1]");
        assert_eq!(det, minor_value(s, &mi(&[1, 2], &[1, 2]), MinorMethod::LaplaceFirstRow).unwrap());
    }

    #[test]
    fn minor_out_of_shape() {
        let err = minor_value(shape(2, 2), &mi(&[1, 3], &[1, 2]), MinorMethod::PermSum);
        assert!(matches!(err, Err(MinorError::IndexOutOfShape { .. })));
        assert_eq!(MinorIndex::new(vec![2, 1], vec![1, 2]), Err(MinorError::NotAscending));
        assert!(matches!(
            MinorIndex::new(vec![1], vec![1, 2]),
            Err(MinorError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn le_st_examples() {
        assert!(le_st(&mi(&[1, 2], &[1, 2]), &mi(&[1], &[1])).unwrap());
        assert!(!le_st(&mi(&[1], &[2]), &mi(&[2], &[1])).unwrap());
        assert!(!le_st(&mi(&[2], &[1]), &mi(&[1], &[2])).unwrap());
        assert!(le_st(&mi(&[1, 3], &[1, 2]), &mi(&[1, 3], &[2, 3])).unwrap());
        assert_eq!(le_st(&MinorIndex::empty(), &mi(&[1], &[1])), Err(MinorError::EmptyMinor));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_minors(shape(2, 2)).len(), 5);
        assert_eq!(enumerate_minors(shape(1, 1)), vec![mi(&[1], &[1])]);
        assert_eq!(enumerate_minors(shape(3, 3)).len(), 19);
        assert_eq!(enumerate_minors(shape(3, 4)).len(), 12 + 18 + 4);
    }

    #[test]
    fn pi_gamma_examples() {
        let s = shape(2, 2);
        assert_eq!(pi_gamma(s, &mi(&[1], &[1])).unwrap(), vec![mi(&[1, 2], &[1, 2])]);
        assert!(pi_gamma(s, &mi(&[1, 2], &[1, 2])).unwrap().is_empty());
        let p = pi_gamma(shape(3, 3), &mi(&[1, 3], &[1, 2])).unwrap();
        assert!(p.contains(&mi(&[1, 2], &[1, 2])));
        assert!(p.contains(&mi(&[1, 2, 3], &[1, 2, 3])));
        assert!(!p.contains(&mi(&[1, 3], &[1, 2])));
        assert_eq!(pi_gamma(s, &MinorIndex::empty()), Err(MinorError::EmptyMinor));
    }

    #[test]
    fn methods_agree_up_to_4x4() {
        let s = shape(4, 4);
        for mu in enumerate_minors(s).into_iter().filter(|mu| mu.size() <= 3) {
            assert_eq!(
                minor_value(s, &mu, MinorMethod::PermSum).unwrap(),
                minor_value(s, &mu, MinorMethod::LaplaceFirstRow).unwrap(),
                "{mu}"
            );
        }
    }

    #[test]
    fn standard_order_is_a_partial_order() {
        for s in [shape(3, 3), shape(3, 4)] {
            let pi = enumerate_minors(s);
            for a in &pi {
                assert!(le_st(a, a).unwrap());
                for b in &pi {
                    let ab = le_st(a, b).unwrap();
                    if ab && le_st(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if !ab {
                        continue;
                    }
                    for c in &pi {
                        if le_st(b, c).unwrap() {
                            assert!(le_st(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }
}
