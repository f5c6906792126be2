use super::{AlgebraError, MatrixShape, NCPoly};
use crate::qfield::LaurentScalar;

/// An element `h = (α_1, …, α_m; β_1, …, β_n)` of the torus `(K*)^(m+n)`,
/// acting by `h·x_ij = α_i β_j x_ij`.
///
/// Entries are single-term Laurent scalars so that the action stays inside
/// `O_q(M_mn)` with Laurent coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    alphas: Vec<LaurentScalar>,
    betas: Vec<LaurentScalar>,
}

impl TorusElement {
    pub fn new(alphas: Vec<LaurentScalar>, betas: Vec<LaurentScalar>) -> Result<Self, AlgebraError> {
        if alphas.iter().chain(&betas).any(|a| !a.is_unit()) {
            return Err(AlgebraError::NotAUnit);
        }
        Ok(Self { alphas, betas })
    }

    pub fn identity(shape: MatrixShape) -> Self {
        Self {
            alphas: vec![LaurentScalar::one(); shape.m()],
            betas: vec![LaurentScalar::one(); shape.n()],
        }
    }

    pub fn alphas(&self) -> &[LaurentScalar] {
        &self.alphas
    }

    pub fn betas(&self) -> &[LaurentScalar] {
        &self.betas
    }

    pub fn alpha(&self, i: usize) -> &LaurentScalar {
        &self.alphas[i - 1]
    }

    pub fn beta(&self, j: usize) -> &LaurentScalar {
        &self.betas[j - 1]
    }

    pub fn inverse(&self) -> Self {
        let inv = |v: &[LaurentScalar]| v.iter().map(|a| a.unit_inverse().expect("unit")).collect();
        Self {
            alphas: inv(&self.alphas),
            betas: inv(&self.betas),
        }
    }

    pub fn fits(&self, shape: MatrixShape) -> bool {
        self.alphas.len() == shape.m() && self.betas.len() == shape.n()
    }

    /// The eigenvalue `Π α_i^{rows} β_j^{cols}` on a monomial with the
    /// given row and column weights.
    pub fn character(&self, rows: &[usize], cols: &[usize]) -> LaurentScalar {
        let mut acc = LaurentScalar::one();
        for (a, &w) in self.alphas.iter().zip(rows) {
            if w > 0 {
                acc = &acc * &a.pow(w as i32).expect("nonnegative power");
            }
        }
        for (b, &w) in self.betas.iter().zip(cols) {
            if w > 0 {
                acc = &acc * &b.pow(w as i32).expect("nonnegative power");
            }
        }
        acc
    }
}

/// Applies the torus automorphism `h` to `p`.
pub fn torus_act(h: &TorusElement, p: &NCPoly) -> Result<NCPoly, AlgebraError> {
    let shape = p.shape();
    if !h.fits(shape) {
        return Err(AlgebraError::TorusShapeMismatch(shape));
    }
    Ok(p.map_coeffs(|m, c| {
        let chi = h.character(&m.row_weights(shape), &m.col_weights(shape));
        if chi.is_one() {
            c.clone()
        } else {
            c * &chi
        }
    }))
}
