//! The quotient `J_γ = O_q(M_mn)/I_γ`, handled through graded membership in
//! `I_γ`: standard monomials, Hilbert functions, the normality scalars
//! `c_τ` and the relations behind the surjection from the tower.

mod checks;
mod ideal;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

pub use checks::{domain_check, regularity_check, theta_injectivity_check, theta_relation_check};
pub use ideal::{ideal_tower, with_ideal, IdealTower};

use crate::gamma::GammaError;
use crate::linalg::{Echelon, GradedBasis, LinalgError, DEFAULT_BASIS_LIMIT};
use crate::minors::{enumerate_minors, le_st, minor_poly, pi_gamma, MinorError, MinorIndex};
use crate::qfield::{LaurentScalar, RationalScalar};
use crate::qmatrix::{graded_basis, AlgebraError, MatrixShape, NCPoly};
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{tau} is not above {gamma} in the standard order")]
    NotAboveGamma { gamma: MinorIndex, tau: MinorIndex },
    #[error("no scalar relates {gamma}{tau} and {tau}{gamma} modulo the ideal; residue {residue}")]
    NoScalarFound {
        gamma: MinorIndex,
        tau: MinorIndex,
        residue: String,
    },
    #[error("{tau}{gamma} lies in the ideal of {gamma}, so the scalar is not determined")]
    NotUnique { gamma: MinorIndex, tau: MinorIndex },
    #[error("elements belong to different quotients ({0} and {1})")]
    GammaMismatch(MinorIndex, MinorIndex),
    #[error("entry ({r},{s}) is outside the {shape} shape")]
    IndexOutOfShape { r: usize, s: usize, shape: MatrixShape },
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
}

/// The literal spanning family `{u·g·v}` of one graded component of `I_γ`.
pub struct GradedSubspace {
    shape: MatrixShape,
    degree: usize,
    spanning: Vec<NCPoly>,
    limit: usize,
    rank: OnceLock<usize>,
}

impl GradedSubspace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn spanning(&self) -> &[NCPoly] {
        &self.spanning
    }

    pub fn rank(&self) -> Result<usize, FactorError> {
        if let Some(&r) = self.rank.get() {
            return Ok(r);
        }
        let mut e = Echelon::new(GradedBasis::with_limit(self.shape, self.degree, self.limit)?);
        for p in &self.spanning {
            e.insert_poly(p)?;
        }
        Ok(*self.rank.get_or_init(|| e.rank()))
    }
}

/// `span{u·g·v : g ∈ Π_γ, deg u + deg g + deg v = d}` with `u`, `v` PBW
/// monomials.
pub fn ideal_graded_span(shape: MatrixShape, gamma: &MinorIndex, d: usize) -> Result<GradedSubspace, FactorError> {
    GradedBasis::with_limit(shape, d, DEFAULT_BASIS_LIMIT)?;
    let mut spanning = Vec::new();
    for g in pi_gamma(shape, gamma)?.iter().filter(|g| g.size() <= d) {
        let gv = minor_poly(shape, g)?;
        let rest = d - g.size();
        for du in 0..=rest {
            let left = graded_basis(shape, du);
            let right = graded_basis(shape, rest - du);
            for u in &left {
                let ug = NCPoly::monomial(shape, u.clone()).mul(&gv);
                for v in &right {
                    spanning.push(ug.mul(&NCPoly::monomial(shape, v.clone())));
                }
            }
        }
    }
    Ok(GradedSubspace {
        shape,
        degree: d,
        spanning,
        limit: DEFAULT_BASIS_LIMIT,
        rank: OnceLock::new(),
    })
}

/// The class of `representative` in `J_γ`.
#[derive(Clone, Debug)]
pub struct JGammaElement {
    pub gamma: MinorIndex,
    pub representative: NCPoly,
}

impl JGammaElement {
    pub fn new(gamma: MinorIndex, representative: NCPoly) -> Self {
        Self { gamma, representative }
    }
}

/// Equality in `J_γ`: every homogeneous component of `a − b` lies in `I_γ`.
pub fn jgamma_equal(a: &JGammaElement, b: &JGammaElement) -> Result<bool, FactorError> {
    if a.gamma != b.gamma {
        return Err(FactorError::GammaMismatch(a.gamma.clone(), b.gamma.clone()));
    }
    let diff = a.representative.try_sub(&b.representative)?;
    with_ideal(diff.shape(), &a.gamma, |t| t.contains(&diff))
}

/// `dim_d J_γ` for `d = 0..=dmax`.
pub fn hilbert_function(shape: MatrixShape, gamma: &MinorIndex, dmax: usize) -> Result<Vec<usize>, FactorError> {
    with_ideal(shape, gamma, |t| (0..=dmax).map(|d| t.quotient_dimension(d)).collect())
}

/// Residue of `γτ − c·τγ` modulo `I_γ`, up to a nonzero scalar.
pub fn ctau_residue(
    shape: MatrixShape,
    gamma: &MinorIndex,
    tau: &MinorIndex,
    c: &LaurentScalar,
) -> Result<NCPoly, FactorError> {
    let g = minor_poly(shape, gamma)?;
    let t = minor_poly(shape, tau)?;
    let mut p = g.mul(&t);
    p.add_scaled(&t.mul(&g), &-c.clone());
    let d = gamma.size() + tau.size();
    with_ideal(shape, gamma, |tw| Ok(tw.residue(&p, d)?.0))
}

/// The scalar `c` with `γτ − c·τγ ∈ I_γ`, for `τ ≥st γ`.
pub fn c_tau(shape: MatrixShape, gamma: &MinorIndex, tau: &MinorIndex) -> Result<RationalScalar, FactorError> {
    if !le_st(gamma, tau)? {
        return Err(FactorError::NotAboveGamma {
            gamma: gamma.clone(),
            tau: tau.clone(),
        });
    }
    let g = minor_poly(shape, gamma)?;
    let t = minor_poly(shape, tau)?;
    let d = gamma.size() + tau.size();
    let gt = g.mul(&t);
    let tg = t.mul(&g);
    let ((rp, lp), (rq, lq)) = with_ideal(shape, gamma, |tw| Ok((tw.residue(&gt, d)?, tw.residue(&tg, d)?)))?;
    let Some((mono, cq)) = rq.terms().next() else {
        return Err(FactorError::NotUnique {
            gamma: gamma.clone(),
            tau: tau.clone(),
        });
    };
    let no_scalar = || FactorError::NoScalarFound {
        gamma: gamma.clone(),
        tau: tau.clone(),
        residue: rp.to_string(),
    };
    // residues are λ·p − (ideal part), so the normalized ones are r/λ
    let ratio = lq.div(&lp).map_err(LinalgError::from)?;
    let cp = rp.coeff(mono).cloned().unwrap_or_else(LaurentScalar::zero);
    let c = RationalScalar::from_laurent(cp)
        .mul(&ratio)
        .div(&RationalScalar::from_laurent(cq.clone()))
        .map_err(LinalgError::from)?;
    if c.is_zero() {
        return Err(no_scalar());
    }
    let lhs = ratio;
    for m in rp.terms().map(|(m, _)| m).chain(rq.terms().map(|(m, _)| m)) {
        let a = RationalScalar::from_laurent(rp.coeff(m).cloned().unwrap_or_else(LaurentScalar::zero));
        let b = RationalScalar::from_laurent(rq.coeff(m).cloned().unwrap_or_else(LaurentScalar::zero));
        if a.mul(&lhs) != c.mul(&b) {
            return Err(no_scalar());
        }
    }
    Ok(c)
}

/// A product `μ_1 μ_2 ⋯ μ_k` along a multichain `μ_1 ≤st μ_2 ≤st ⋯`,
/// multiplied left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMonomial {
    pub chain: Vec<MinorIndex>,
}

impl StandardMonomial {
    pub fn degree(&self) -> usize {
        self.chain.iter().map(MinorIndex::size).sum()
    }

    pub fn evaluate(&self, shape: MatrixShape) -> Result<NCPoly, FactorError> {
        let mut p = NCPoly::one(shape);
        for mu in &self.chain {
            p = p.mul(&*minor_poly(shape, mu)?);
        }
        Ok(p)
    }
}

impl fmt::Display for StandardMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_empty() {
            return f.write_str("1");
        }
        for mu in &self.chain {
            write!(f, "{mu}")?;
        }
        Ok(())
    }
}

/// All multichains of `poset` of total degree `d`, in the order induced by
/// the order of `poset`.
pub fn standard_monomials(poset: &[MinorIndex], d: usize) -> Vec<StandardMonomial> {
    fn rec(poset: &[MinorIndex], left: usize, chain: &mut Vec<MinorIndex>, out: &mut Vec<StandardMonomial>) {
        if left == 0 {
            out.push(StandardMonomial { chain: chain.clone() });
            return;
        }
        for mu in poset {
            if mu.size() > left {
                continue;
            }
            if let Some(last) = chain.last() {
                if !le_st(last, mu).unwrap_or(false) {
                    continue;
                }
            }
            chain.push(mu.clone());
            rec(poset, left - mu.size(), chain, out);
            chain.pop();
        }
    }
    let mut out = Vec::new();
    rec(poset, d, &mut Vec::new(), &mut out);
    out
}

/// `Π ∖ Π_γ`, the minors `≥st γ`.
pub fn poset_above(shape: MatrixShape, gamma: &MinorIndex) -> Result<Vec<MinorIndex>, FactorError> {
    gamma.check_fits(shape)?;
    let mut out = Vec::new();
    for mu in enumerate_minors(shape) {
        if le_st(gamma, &mu)? {
            out.push(mu);
        }
    }
    Ok(out)
}

/// Certifies that the standard monomials of degree `d` are a basis of
/// `O_q(M_mn)_d`, or of `(J_γ)_d` when `gamma` is given.
pub fn basis_check(shape: MatrixShape, gamma: Option<&MinorIndex>, d: usize) -> Result<CheckReport, FactorError> {
    let mut report = CheckReport::new();
    let basis = GradedBasis::with_limit(shape, d, DEFAULT_BASIS_LIMIT)?;
    match gamma {
        None => {
            let std = standard_monomials(&enumerate_minors(shape), d);
            report.record(
                format!("d={d}: count"),
                std.len() == basis.len(),
                format!("{} standard monomials, dimension {}", std.len(), basis.len()),
            );
            let mut e = Echelon::new(basis.clone());
            for s in &std {
                e.insert_poly(&s.evaluate(shape)?)?;
            }
            report.record(
                format!("d={d}: rank"),
                e.rank() == std.len(),
                format!("rank {} of {}", e.rank(), std.len()),
            );
        }
        Some(gamma) => {
            let std = standard_monomials(&poset_above(shape, gamma)?, d);
            let values = std.iter().map(|s| s.evaluate(shape)).collect::<Result<Vec<_>, _>>()?;
            with_ideal(shape, gamma, |tw| {
                let ideal_rank = tw.rank(d)?;
                let expected = basis.len() - ideal_rank;
                report.record(
                    format!("d={d}: count"),
                    std.len() == expected,
                    format!("{} standard monomials, dim {} - ideal rank {ideal_rank}", std.len(), basis.len()),
                );
                let mut e = tw.component(d)?.clone();
                let before = e.rank();
                let mut independent = 0;
                for v in &values {
                    if e.insert_poly(&tw.project(v))? {
                        independent += 1;
                    }
                }
                let total = ideal_rank + (e.rank() - before);
                report.record(
                    format!("d={d}: trivial intersection"),
                    independent == std.len(),
                    format!("{independent} of {} independent modulo the ideal", std.len()),
                );
                report.record(
                    format!("d={d}: joint rank"),
                    total == basis.len(),
                    format!("rank {total}, dimension {}", basis.len()),
                );
                Ok(())
            })?;
        }
    }
    Ok(report)
}
