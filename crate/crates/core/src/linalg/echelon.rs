//! Incremental row echelon form over `ℤ[q, q⁻¹]`.
//!
//! Rows are kept sparse and primitive. A new vector is reduced against the
//! stored rows in insertion order; each stored row vanishes on the pivot
//! columns of every earlier row, so one pass suffices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::zpoly::ZLaurent;
use super::{CoefficientVector, GradedBasis, LinalgError};
use crate::qfield::{LaurentScalar, RationalScalar};
use crate::qmatrix::NCPoly;

type Comb = BTreeMap<usize, RationalScalar>;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    entries: BTreeMap<usize, ZLaurent>,
    comb: Option<Comb>,
}

/// Working vector `w = λ·v + Σ κ_i s_i`, where `v` is the vector being
/// reduced and `s_i` are the inserted inputs.
struct Work {
    entries: BTreeMap<usize, ZLaurent>,
    lambda: RationalScalar,
    comb: Option<Comb>,
    track_lambda: bool,
}

fn rs(z: &ZLaurent) -> RationalScalar {
    RationalScalar::from_laurent(z.to_laurent())
}

impl Work {
    fn scale(&mut self, a: &ZLaurent) {
        for v in self.entries.values_mut() {
            *v = v.mul(a);
        }
        if self.comb.is_some() || self.track_lambda {
            let r = rs(a);
            self.lambda = self.lambda.mul(&r);
            if let Some(comb) = &mut self.comb {
                for v in comb.values_mut() {
                    *v = v.mul(&r);
                }
            }
        }
    }

    /// `w -= c · row`.
    fn sub_scaled(&mut self, c: &ZLaurent, row: &Row) {
        for (col, e) in &row.entries {
            let t = e.mul(c);
            match self.entries.get_mut(col) {
                Some(v) => {
                    let d = v.sub(&t);
                    if d.is_zero() {
                        self.entries.remove(col);
                    } else {
                        *v = d;
                    }
                }
                None => {
                    self.entries.insert(*col, t.neg());
                }
            }
        }
        if let (Some(comb), Some(rc)) = (&mut self.comb, &row.comb) {
            let r = rs(c);
            for (k, v) in rc {
                let t = v.mul(&r);
                let e = comb.entry(*k).or_insert_with(RationalScalar::zero);
                *e = e.sub(&t);
                if e.is_zero() {
                    comb.remove(k);
                }
            }
        }
    }

    /// Divides out integer content, polynomial content (when `deep`), and the
    /// lowest power of `q`.
    fn normalize(&mut self, deep: bool) {
        if self.entries.is_empty() {
            return;
        }
        let content = self
            .entries
            .values()
            .fold(BigInt::from(0), |acc, v| acc.gcd(&v.content()));
        let low = self.entries.values().map(|v| v.low()).min().unwrap();
        let mut divisor = ZLaurent::monomial(content, low);
        if deep && self.entries.len() > 1 {
            let mut g: Option<ZLaurent> = None;
            for v in self.entries.values() {
                let next = match &g {
                    None => ZLaurent::gcd(v, &ZLaurent::zero()),
                    Some(g) => ZLaurent::gcd(g, v),
                };
                let done = next.num_terms() == 1;
                g = Some(next);
                if done {
                    break;
                }
            }
            if let Some(g) = g.filter(|g| g.num_terms() > 1) {
                for v in self.entries.values_mut() {
                    *v = v.div_exact(&g);
                }
                self.divide_comb(&g);
            }
        } else if self.entries.len() == 1 {
            // a lone entry can be made a unit
            let v = self.entries.values().next().unwrap().clone();
            if v.num_terms() > 1 {
                divisor = v.clone();
                let col = *self.entries.keys().next().unwrap();
                self.entries.insert(col, ZLaurent::one());
                self.divide_comb(&divisor);
                return;
            }
        }
        if divisor.as_term().is_some_and(|(c, e)| !c.is_one() || e != 0) {
            let (c, e) = divisor.as_term().map(|(c, e)| (c.clone(), e)).unwrap();
            for v in self.entries.values_mut() {
                *v = v.div_int(&c).shift(-e);
            }
            self.divide_comb(&divisor);
        }
    }

    fn divide_comb(&mut self, d: &ZLaurent) {
        if self.comb.is_some() || self.track_lambda {
            let r = rs(d).recip().expect("nonzero divisor");
            self.lambda = self.lambda.mul(&r);
            if let Some(comb) = &mut self.comb {
                for v in comb.values_mut() {
                    *v = v.mul(&r);
                }
            }
        }
    }
}

/// Row echelon form of a growing set of vectors in one graded component.
#[derive(Clone, Debug)]
pub struct Echelon {
    basis: Arc<GradedBasis>,
    rows: Vec<Row>,
    tracking: bool,
    inputs: usize,
}

impl Echelon {
    pub fn new(basis: Arc<GradedBasis>) -> Self {
        Self {
            basis,
            rows: Vec::new(),
            tracking: false,
            inputs: 0,
        }
    }

    /// An echelon that records how each row combines the inserted vectors,
    /// so that [`Echelon::express`] can return coefficients.
    pub fn with_tracking(basis: Arc<GradedBasis>) -> Self {
        Self {
            tracking: true,
            ..Self::new(basis)
        }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far, counting dependent ones.
    pub fn num_inserted(&self) -> usize {
        self.inputs
    }

    fn work_from_poly(&self, p: &NCPoly) -> Result<(BTreeMap<usize, ZLaurent>, BigInt), LinalgError> {
        if p.shape() != self.basis.shape() {
            return Err(LinalgError::BasisMismatch);
        }
        let mut raw = Vec::with_capacity(p.num_terms());
        let mut den = BigInt::one();
        for (m, c) in p.terms() {
            let col = self.basis.position(m).ok_or(LinalgError::OutsideBasis {
                degree: self.basis.degree(),
            })?;
            let (z, d) = ZLaurent::from_laurent(c);
            if !d.is_one() {
                den = den.lcm(&d);
            }
            raw.push((col, z, d));
        }
        let entries = raw
            .into_iter()
            .map(|(col, z, d)| {
                if den == d {
                    (col, z)
                } else {
                    (col, z.scale_int(&(&den / d)))
                }
            })
            .collect();
        Ok((entries, den))
    }

    fn work_from_vector(&self, v: &CoefficientVector) -> Result<(BTreeMap<usize, ZLaurent>, RationalScalar), LinalgError> {
        if !v.basis().same_as(&self.basis) {
            return Err(LinalgError::BasisMismatch);
        }
        // common denominator: product of the distinct denominators
        let mut common = LaurentScalar::one();
        let mut seen: Vec<&LaurentScalar> = Vec::new();
        for (_, e) in v.sparse_entries() {
            if !e.denom().is_one() && !seen.contains(&e.denom()) {
                seen.push(e.denom());
                common = &common * e.denom();
            }
        }
        let common = RationalScalar::from_laurent(common);
        let mut laurent = Vec::new();
        for (col, e) in v.sparse_entries() {
            let l = e.mul(&common).to_laurent().expect("denominator cleared");
            laurent.push((*col, l));
        }
        let mut den = BigInt::one();
        let mut raw = Vec::new();
        for (col, l) in laurent {
            let (z, d) = ZLaurent::from_laurent(&l);
            den = den.lcm(&d);
            raw.push((col, z, d));
        }
        let entries = raw
            .into_iter()
            .map(|(col, z, d)| (col, z.scale_int(&(&den / d))))
            .collect();
        let scale = common.mul(&RationalScalar::from_laurent(LaurentScalar::from_rational(
            num_rational::BigRational::from_integer(den),
        )));
        Ok((entries, scale))
    }

    fn reduce(&self, w: &mut Work) {
        for row in &self.rows {
            let Some(c) = w.entries.get(&row.pivot).cloned() else {
                continue;
            };
            let a = &row.entries[&row.pivot];
            let (mult, deep) = match a.as_term() {
                Some((u, e)) if u.abs().is_one() => {
                    let c = if u.is_negative() { c.neg() } else { c };
                    (c.shift(-e), false)
                }
                Some((u, e)) => {
                    let g = u.gcd(&c.content());
                    w.scale(&ZLaurent::monomial(u / &g, 0));
                    (c.div_int(&g).shift(-e), false)
                }
                None => {
                    let g = ZLaurent::gcd(a, &c);
                    let a2 = a.div_exact(&g);
                    let c2 = c.div_exact(&g);
                    if a2 != ZLaurent::one() {
                        w.scale(&a2);
                    }
                    (c2, a2.num_terms() > 1)
                }
            };
            w.sub_scaled(&mult, row);
            debug_assert!(!w.entries.contains_key(&row.pivot));
            w.normalize(deep);
        }
    }

    fn insert_work(&mut self, mut w: Work) -> bool {
        self.inputs += 1;
        self.reduce(&mut w);
        if w.entries.is_empty() {
            return false;
        }
        w.normalize(true);
        let pivot = *w
            .entries
            .iter()
            .min_by_key(|(col, v)| (v.num_terms(), **col))
            .unwrap()
            .0;
        self.rows.push(Row {
            pivot,
            entries: w.entries,
            comb: w.comb,
        });
        true
    }

    /// Inserts a vector; returns whether it raised the rank.
    pub fn insert(&mut self, v: &CoefficientVector) -> Result<bool, LinalgError> {
        let (entries, scale) = self.work_from_vector(v)?;
        let comb = self.tracking.then(|| Comb::from([(self.inputs, scale)]));
        Ok(self.insert_work(Work {
            entries,
            lambda: RationalScalar::zero(),
            comb,
            track_lambda: false,
        }))
    }

    /// Inserts a homogeneous polynomial of the basis degree.
    pub fn insert_poly(&mut self, p: &NCPoly) -> Result<bool, LinalgError> {
        let (entries, den) = self.work_from_poly(p)?;
        let comb = self.tracking.then(|| {
            Comb::from([(
                self.inputs,
                RationalScalar::from_rational(num_rational::BigRational::from_integer(den)),
            )])
        });
        Ok(self.insert_work(Work {
            entries,
            lambda: RationalScalar::zero(),
            comb,
            track_lambda: false,
        }))
    }

    /// Whether `p` lies in the span of the inserted vectors.
    pub fn contains_poly(&self, p: &NCPoly) -> Result<bool, LinalgError> {
        let (entries, _) = self.work_from_poly(p)?;
        let mut w = Work {
            entries,
            lambda: RationalScalar::one(),
            comb: None,
            track_lambda: false,
        };
        self.reduce(&mut w);
        Ok(w.entries.is_empty())
    }

    pub fn contains(&self, v: &CoefficientVector) -> Result<bool, LinalgError> {
        let (entries, _) = self.work_from_vector(v)?;
        let mut w = Work {
            entries,
            lambda: RationalScalar::one(),
            comb: None,
            track_lambda: false,
        };
        self.reduce(&mut w);
        Ok(w.entries.is_empty())
    }

    /// Coefficients `c_i` with `v = Σ c_i s_i` over the inserted vectors
    /// `s_i`, in insertion order. Needs tracking.
    pub fn express(&self, v: &CoefficientVector) -> Result<Option<Vec<RationalScalar>>, LinalgError> {
        let (entries, scale) = self.work_from_vector(v)?;
        self.express_work(entries, scale)
    }

    pub fn express_poly(&self, p: &NCPoly) -> Result<Option<Vec<RationalScalar>>, LinalgError> {
        let (entries, den) = self.work_from_poly(p)?;
        self.express_work(
            entries,
            RationalScalar::from_rational(num_rational::BigRational::from_integer(den)),
        )
    }

    fn express_work(
        &self,
        entries: BTreeMap<usize, ZLaurent>,
        scale: RationalScalar,
    ) -> Result<Option<Vec<RationalScalar>>, LinalgError> {
        if !self.tracking {
            return Err(LinalgError::TrackingDisabled);
        }
        let mut w = Work {
            entries,
            lambda: scale,
            comb: Some(Comb::new()),
            track_lambda: true,
        };
        self.reduce(&mut w);
        if !w.entries.is_empty() {
            return Ok(None);
        }
        // λ v + Σ κ_i s_i = 0
        let minus_inv = w.lambda.recip().expect("λ stays nonzero").neg();
        let mut out = vec![RationalScalar::zero(); self.inputs];
        for (k, c) in w.comb.unwrap() {
            out[k] = c.mul(&minus_inv);
        }
        Ok(Some(out))
    }

    /// `(r, λ)` with `r = λ·p − s` for some `s` in the span and `r`
    /// vanishing on every pivot column. `r` is zero exactly when `p` lies in
    /// the span, and `r/λ` depends linearly on `p`.
    pub fn residue_poly(&self, p: &NCPoly) -> Result<(NCPoly, RationalScalar), LinalgError> {
        let (entries, den) = self.work_from_poly(p)?;
        let mut w = Work {
            entries,
            lambda: RationalScalar::from_rational(num_rational::BigRational::from_integer(den)),
            comb: None,
            track_lambda: true,
        };
        self.reduce(&mut w);
        let mut r = NCPoly::zero(self.basis.shape());
        for (col, v) in &w.entries {
            r.add_term(self.basis.monomial(*col).clone(), v.to_laurent());
        }
        Ok((r, w.lambda))
    }

    /// The stored rows as polynomials; they form a basis of the span.
    pub fn row_polys(&self) -> Vec<NCPoly> {
        let shape = self.basis.shape();
        self.rows
            .iter()
            .map(|r| {
                let mut p = NCPoly::zero(shape);
                for (col, v) in &r.entries {
                    p.add_term(self.basis.monomial(*col).clone(), v.to_laurent());
                }
                p
            })
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }
}
