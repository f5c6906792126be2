//! Graded components of `I_γ`.
//!
//! Every `x_ij` with `i < a_1` or `j < b_1` lies in `Π_γ`. Killing those
//! variables is an algebra map onto the quantum matrices of the lower right
//! block, and its kernel is the span of the PBW monomials containing one of
//! them. So `I_γ` splits as that kernel plus a small ideal living on the
//! surviving monomials, and only the small ideal is stored.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::FactorError;
use crate::linalg::{graded_dimension, Echelon, GradedBasis, LinalgError, DEFAULT_BASIS_LIMIT};
use crate::minors::{minor_poly, pi_gamma, MinorIndex};
use crate::qfield::RationalScalar;
use crate::qmatrix::{MatrixShape, NCPoly, OrderedMonomial};

pub struct IdealTower {
    shape: MatrixShape,
    gamma: MinorIndex,
    limit: usize,
    alive: Vec<bool>,
    alive_gens: Vec<NCPoly>,
    seeds: Vec<NCPoly>,
    components: Vec<Echelon>,
}

impl IdealTower {
    pub fn new(shape: MatrixShape, gamma: &MinorIndex, limit: usize) -> Result<Self, FactorError> {
        let pi = pi_gamma(shape, gamma)?;
        let (a1, b1) = (gamma.rows()[0], gamma.cols()[0]);
        let alive: Vec<bool> = (0..shape.num_generators())
            .map(|g| {
                let (i, j) = shape.generator_position(g);
                i >= a1 && j >= b1
            })
            .collect();
        let alive_gens = (0..shape.num_generators())
            .filter(|&g| alive[g])
            .map(|g| {
                let (i, j) = shape.generator_position(g);
                NCPoly::generator(shape, i, j).expect("inside the shape")
            })
            .collect();
        let mut tower = Self {
            shape,
            gamma: gamma.clone(),
            limit,
            alive,
            alive_gens,
            seeds: Vec::new(),
            components: Vec::new(),
        };
        for g in &pi {
            let p = tower.project(&*minor_poly(shape, g)?);
            if !p.is_zero() {
                tower.seeds.push(p);
            }
        }
        Ok(tower)
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn gamma(&self) -> &MinorIndex {
        &self.gamma
    }

    pub fn survives(&self, m: &OrderedMonomial) -> bool {
        m.exponents()
            .iter()
            .zip(&self.alive)
            .all(|(&e, &a)| a || e == 0)
    }

    /// Drops the monomials that contain a killed variable.
    pub fn project(&self, p: &NCPoly) -> NCPoly {
        p.filter_terms(|m| self.survives(m))
    }

    /// Number of surviving PBW monomials of degree `d`.
    pub fn surviving_dimension(&self, d: usize) -> usize {
        let n = self.alive_gens.len();
        if n == 0 {
            return usize::from(d == 0);
        }
        graded_dimension(MatrixShape::new(1, n).expect("nonempty"), d)
    }

    fn build(&self, d: usize) -> Result<Echelon, FactorError> {
        let basis = GradedBasis::with_limit(self.shape, d, self.limit)?;
        let mut e = Echelon::new(basis);
        let full = self.surviving_dimension(d);
        if d == 0 || self.seeds.is_empty() {
            return Ok(e);
        }
        for s in self.seeds.iter().filter(|s| s.degree() == Some(d)) {
            e.insert_poly(s)?;
        }
        let prev = self.components[d - 1].row_polys();
        'outer: for row in &prev {
            for x in &self.alive_gens {
                if e.rank() == full {
                    break 'outer;
                }
                e.insert_poly(&row.mul(x))?;
                e.insert_poly(&x.mul(row))?;
            }
        }
        Ok(e)
    }

    fn ensure(&mut self, d: usize) -> Result<(), FactorError> {
        while self.components.len() <= d {
            let e = self.build(self.components.len())?;
            self.components.push(e);
        }
        Ok(())
    }

    /// The stored part of the degree `d` component, on surviving monomials.
    pub fn component(&mut self, d: usize) -> Result<&Echelon, FactorError> {
        self.ensure(d)?;
        Ok(&self.components[d])
    }

    pub fn built_degree(&self) -> Option<usize> {
        self.components.len().checked_sub(1)
    }

    /// Rows of the stored part at degree `d`, for caching.
    pub fn component_rows(&mut self, d: usize) -> Result<Vec<NCPoly>, FactorError> {
        Ok(self.component(d)?.row_polys())
    }

    /// Installs degree `d` from previously computed rows. Only the next
    /// missing degree can be seeded.
    pub fn seed_component(&mut self, d: usize, rows: &[NCPoly]) -> Result<bool, FactorError> {
        if d != self.components.len() {
            return Ok(false);
        }
        let basis = GradedBasis::with_limit(self.shape, d, self.limit)?;
        let mut e = Echelon::new(basis);
        for r in rows {
            if r.filter_terms(|m| !self.survives(m)).num_terms() > 0 {
                return Ok(false);
            }
            e.insert_poly(r)?;
        }
        self.components.push(e);
        Ok(true)
    }

    /// True when `I_γ` is spanned by the monomials with a killed variable.
    pub fn is_monomial(&self) -> bool {
        self.seeds.is_empty()
    }

    fn small_rank(&mut self, d: usize) -> Result<usize, FactorError> {
        if self.is_monomial() {
            return Ok(0);
        }
        Ok(self.component(d)?.rank())
    }

    /// `dim I_d`.
    pub fn rank(&mut self, d: usize) -> Result<usize, FactorError> {
        let killed = graded_dimension(self.shape, d) - self.surviving_dimension(d);
        Ok(killed + self.small_rank(d)?)
    }

    /// `dim_d J_γ`.
    pub fn quotient_dimension(&mut self, d: usize) -> Result<usize, FactorError> {
        Ok(self.surviving_dimension(d) - self.small_rank(d)?)
    }

    /// Monomials whose classes form a basis of `J_d`.
    pub fn quotient_representatives(&mut self, d: usize) -> Result<Vec<OrderedMonomial>, FactorError> {
        let e = self.component(d)?;
        let pivots: std::collections::BTreeSet<usize> = e.pivot_columns().into_iter().collect();
        let basis = e.basis().clone();
        Ok((0..basis.len())
            .filter(|k| !pivots.contains(k))
            .map(|k| basis.monomial(k).clone())
            .filter(|m| self.survives(m))
            .collect())
    }

    /// Membership of every homogeneous component of `p`.
    pub fn contains(&mut self, p: &NCPoly) -> Result<bool, FactorError> {
        let p = self.project(p);
        if self.is_monomial() {
            return Ok(p.is_zero());
        }
        for d in p.degrees() {
            if !self.component(d)?.contains_poly(&p.homogeneous_component(d))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(r, λ)` for homogeneous `p` of degree `d`: `r/λ` is linear in `p` and
    /// vanishes exactly on `I_d`.
    pub fn residue(&mut self, p: &NCPoly, d: usize) -> Result<(NCPoly, RationalScalar), FactorError> {
        let p = self.project(p);
        if p.degrees().iter().any(|&e| e != d) {
            return Err(LinalgError::OutsideBasis { degree: d }.into());
        }
        if self.is_monomial() {
            return Ok((p, RationalScalar::one()));
        }
        Ok(self.component(d)?.residue_poly(&p)?)
    }
}

type TowerKey = (MatrixShape, MinorIndex);

fn registry() -> &'static Mutex<HashMap<TowerKey, Arc<Mutex<IdealTower>>>> {
    static TOWERS: OnceLock<Mutex<HashMap<TowerKey, Arc<Mutex<IdealTower>>>>> = OnceLock::new();
    TOWERS.get_or_init(Default::default)
}

/// The shared tower for `(shape, γ)`, built on first use.
pub fn ideal_tower(shape: MatrixShape, gamma: &MinorIndex) -> Result<Arc<Mutex<IdealTower>>, FactorError> {
    let key = (shape, gamma.clone());
    if let Some(t) = registry().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(t.clone());
    }
    let tower = Arc::new(Mutex::new(IdealTower::new(shape, gamma, DEFAULT_BASIS_LIMIT)?));
    Ok(registry()
        .lock()
        .expect("registry")
        .entry(key)
        .or_insert(tower)
        .clone())
}

/// Runs `f` on the shared tower for `(shape, γ)`.
pub fn with_ideal<T>(
    shape: MatrixShape,
    gamma: &MinorIndex,
    f: impl FnOnce(&mut IdealTower) -> Result<T, FactorError>,
) -> Result<T, FactorError> {
    let tower = ideal_tower(shape, gamma)?;
    let mut guard = tower.lock().unwrap_or_else(|e| e.into_inner());
    f(&mut guard)
}
