//! Gaussian elimination over ℚ after substituting `q = q0`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::CoefficientVector;
use crate::qfield::{specialize, QFieldError};

#[derive(Default)]
pub(crate) struct QEchelon {
    rows: Vec<(usize, BTreeMap<usize, BigRational>)>,
}

impl QEchelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut w: BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
        for (pivot, row) in &self.rows {
            let Some(c) = w.get(pivot).cloned() else {
                continue;
            };
            for (col, e) in row {
                let t = &c * e;
                let v = w.entry(*col).or_insert_with(BigRational::zero);
                *v -= t;
                if v.is_zero() {
                    w.remove(col);
                }
            }
        }
        w
    }

    pub fn insert(&mut self, w: BTreeMap<usize, BigRational>) -> bool {
        let w = self.reduce(w);
        let Some((&pivot, lead)) = w.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row = w.iter().map(|(k, v)| (*k, v * &inv)).collect();
        self.rows.push((pivot, row));
        true
    }

    pub fn contains(&self, w: BTreeMap<usize, BigRational>) -> bool {
        self.reduce(w).is_empty()
    }
}

/// The vector at `q = q0`, or `None` when an entry has a pole there or
/// `q0 = ±1`.
pub(crate) fn specialize_vector(
    v: &CoefficientVector,
    q0: &BigRational,
) -> Result<Option<BTreeMap<usize, BigRational>>, QFieldError> {
    let mut out = BTreeMap::new();
    for (col, e) in v.sparse_entries() {
        let s = match specialize(e, q0) {
            Ok(s) if !s.degenerate => s,
            Ok(_) | Err(QFieldError::PoleAtSpecialization(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if !s.value.is_zero() {
            out.insert(*col, s.value);
        }
    }
    Ok(Some(out))
}
