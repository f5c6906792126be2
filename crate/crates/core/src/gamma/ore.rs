use std::sync::Arc;

use super::{enumerate_m, torus_element_for, FamilyKind, FamilyMember, GammaError, GammaFrame, TowerGenerator};
use crate::linalg::{Echelon, GradedBasis, DEFAULT_BASIS_LIMIT};
use crate::qfield::{LaurentScalar, RationalScalar};
use crate::qmatrix::{torus_act, MatrixShape, NCPoly, TorusElement};
use crate::report::CheckReport;

/// Coefficient of `z^d`, `d ≤ dmax`, in `Π_g 1/(1 − z^{deg g})`.
pub fn pbw_series(degrees: &[usize], dmax: usize) -> Vec<usize> {
    let mut series = vec![0usize; dmax + 1];
    series[0] = 1;
    for &g in degrees {
        for d in g..=dmax {
            series[d] += series[d - g];
        }
    }
    series
}

/// `δ(a) = x·a − σ(a)·x` for one earlier generator `a`, with coefficients
/// over the ordered generator products of the earlier stage.
#[derive(Debug, Clone)]
pub struct DeltaWitness {
    pub generator: String,
    pub delta: NCPoly,
    pub coefficients: Option<Vec<(String, RationalScalar)>>,
}

#[derive(Debug, Clone)]
pub struct OreStepReport {
    pub stage: usize,
    pub member: FamilyMember,
    /// `σ = h⁻¹` on each earlier generator: its eigenvalue, if it is an
    /// eigenvector.
    pub eigenvalues: Vec<(String, Option<LaurentScalar>)>,
    pub deltas: Vec<DeltaWitness>,
    pub dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
    pub report: CheckReport,
}

struct Weighted<'a> {
    gen: &'a TowerGenerator,
    rows: Vec<usize>,
    cols: Vec<usize>,
}

fn weights(shape: MatrixShape, gens: &[TowerGenerator]) -> Vec<Weighted<'_>> {
    gens.iter()
        .map(|g| {
            let mut rows = vec![0; shape.m()];
            let mut cols = vec![0; shape.n()];
            for &r in g.minor.rows() {
                rows[r - 1] += 1;
            }
            for &c in g.minor.cols() {
                cols[c - 1] += 1;
            }
            Weighted { gen: g, rows, cols }
        })
        .collect()
}

/// Ordered products `g_1^{e_1} ⋯ g_k^{e_k}` of total degree `d`, optionally
/// restricted to a bidegree.
fn ordered_products(
    shape: MatrixShape,
    gens: &[Weighted<'_>],
    d: usize,
    bidegree: Option<(&[usize], &[usize])>,
) -> Vec<(String, NCPoly)> {
    struct Ctx<'a, 'b> {
        gens: &'a [Weighted<'b>],
        out: Vec<(String, NCPoly)>,
    }
    fn label(gens: &[Weighted<'_>], exps: &[usize]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let name = &gens[k].gen.label;
                if e == 1 {
                    name.clone()
                } else {
                    format!("({name})^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
    fn rec(
        ctx: &mut Ctx<'_, '_>,
        k: usize,
        left: usize,
        rows: Option<Vec<usize>>,
        cols: Option<Vec<usize>>,
        prefix: NCPoly,
        exps: &mut Vec<usize>,
    ) {
        if left == 0 {
            let fits = rows.as_ref().is_none_or(|r| r.iter().all(|&x| x == 0))
                && cols.as_ref().is_none_or(|c| c.iter().all(|&x| x == 0));
            if fits {
                let mut full = exps.clone();
                full.resize(ctx.gens.len(), 0);
                ctx.out.push((label(ctx.gens, &full), prefix));
            }
            return;
        }
        if k == ctx.gens.len() {
            return;
        }
        let g = &ctx.gens[k];
        let deg = g.gen.degree();
        let mut e = 0;
        let mut p = prefix;
        let mut rows = rows;
        let mut cols = cols;
        loop {
            exps.push(e);
            rec(ctx, k + 1, left - e * deg, rows.clone(), cols.clone(), p.clone(), exps);
            exps.pop();
            if (e + 1) * deg > left {
                break;
            }
            let sub = |v: &mut Option<Vec<usize>>, w: &[usize]| -> bool {
                match v {
                    None => true,
                    Some(v) => v.iter_mut().zip(w).all(|(a, &b)| {
                        if *a >= b {
                            *a -= b;
                            true
                        } else {
                            false
                        }
                    }),
                }
            };
            if !sub(&mut rows, &g.rows) || !sub(&mut cols, &g.cols) {
                break;
            }
            p = p.mul(&g.gen.value);
            e += 1;
        }
    }
    let mut ctx = Ctx { gens, out: Vec::new() };
    let (rows, cols) = match bidegree {
        Some((r, c)) => (Some(r.to_vec()), Some(c.to_vec())),
        None => (None, None),
    };
    rec(&mut ctx, 0, d, rows, cols, NCPoly::one(shape), &mut Vec::new());
    ctx.out
}

/// Ordered products of `gens` of total degree `d`, labelled.
pub(crate) fn generator_products(shape: MatrixShape, gens: &[TowerGenerator], d: usize) -> Vec<(String, NCPoly)> {
    ordered_products(shape, &weights(shape, gens), d, None)
}

fn eigenvalue(h: &TorusElement, p: &NCPoly) -> Option<LaurentScalar> {
    let shape = p.shape();
    let (m, _) = p.terms().next()?;
    let lambda = h.character(&m.row_weights(shape), &m.col_weights(shape));
    (torus_act(h, p).ok()? == p.scale(&lambda)).then_some(lambda)
}

/// Checks that adjoining family member `stage_index` to the earlier stage is
/// a skew-polynomial step: `σ = h⁻¹` acts diagonally on the earlier
/// generators, every `δ(a)` lies in the earlier stage, and the graded
/// dimensions of the new stage up to `max_degree` match the product series.
pub fn ore_step_check(frame: &GammaFrame, stage_index: usize, max_degree: usize) -> Result<OreStepReport, GammaError> {
    let shape = frame.shape();
    let family = enumerate_m(frame);
    let member = family
        .get(stage_index)
        .cloned()
        .ok_or(GammaError::StageOutOfRange {
            index: stage_index,
            len: family.len(),
        })?;
    let t = frame.t();
    if max_degree < t {
        return Err(GammaError::DegreeTooSmall {
            given: max_degree,
            needed: t,
        });
    }
    let gens = frame.tower_generators();
    let cut = t * t + stage_index;
    let (prior, x) = (&gens[..cut], &gens[cut]);
    let sigma = torus_element_for(frame, &member)?.inverse();
    let mut report = CheckReport::new();

    let mut eigenvalues = Vec::new();
    for g in prior {
        let ev = eigenvalue(&sigma, &g.value);
        report.record(
            format!("σ eigenvector {}", g.label),
            ev.is_some(),
            ev.as_ref().map_or("not an eigenvector".to_string(), |l| l.to_string()),
        );
        eigenvalues.push((g.label.clone(), ev));
    }

    let prior_w = weights(shape, prior);
    let x_w = weights(shape, std::slice::from_ref(x));
    let mut deltas = Vec::new();
    for (g, gw) in prior.iter().zip(&prior_w) {
        let lambda = eigenvalues
            .iter()
            .find(|(l, _)| *l == g.label)
            .and_then(|(_, ev)| ev.clone())
            .unwrap_or_else(LaurentScalar::one);
        let delta = x.value.mul(&g.value).try_sub(&g.value.mul(&x.value).scale(&lambda)).expect("same shape");
        let d = g.degree() + x.degree();
        let rows: Vec<usize> = gw.rows.iter().zip(&x_w[0].rows).map(|(a, b)| a + b).collect();
        let cols: Vec<usize> = gw.cols.iter().zip(&x_w[0].cols).map(|(a, b)| a + b).collect();
        let name = format!("δ({}) in earlier stage", g.label);
        if member.kind == FamilyKind::C && g.degree() == t && g.label.starts_with('m') {
            report.record(
                format!("(iv) {} · {} exact", x.label, g.label),
                delta.is_zero(),
                if delta.is_zero() { String::new() } else { format!("remainder {delta}") },
            );
        }
        if delta.is_zero() {
            report.record(name, true, "δ = 0");
            deltas.push(DeltaWitness {
                generator: g.label.clone(),
                delta,
                coefficients: Some(Vec::new()),
            });
            continue;
        }
        let basis = GradedBasis::with_limit(shape, d, DEFAULT_BASIS_LIMIT)?;
        let products = ordered_products(shape, &prior_w, d, Some((&rows, &cols)));
        let mut ech = Echelon::with_tracking(Arc::clone(&basis));
        for (_, p) in &products {
            ech.insert_poly(p)?;
        }
        let coefficients = ech.express_poly(&delta)?.map(|cs| {
            products
                .iter()
                .zip(cs)
                .filter(|(_, c)| !c.is_zero())
                .map(|((label, _), c)| (label.clone(), c))
                .collect::<Vec<_>>()
        });
        let ok = match &coefficients {
            Some(cs) => recombines(&delta, cs, &products),
            None => false,
        };
        let witness = match &coefficients {
            Some(cs) => cs
                .iter()
                .map(|(l, c)| format!("({c})·{l}"))
                .collect::<Vec<_>>()
                .join(" + "),
            None => format!("δ = {delta} is outside the span"),
        };
        report.record(name, ok, witness);
        deltas.push(DeltaWitness {
            generator: g.label.clone(),
            delta,
            coefficients,
        });
    }

    let stage_gens = &gens[..=cut];
    let stage_w = weights(shape, stage_gens);
    let degrees: Vec<usize> = stage_gens.iter().map(|g| g.degree()).collect();
    let expected_dims = pbw_series(&degrees, max_degree);
    let mut dims = Vec::new();
    for (d, &expected) in expected_dims.iter().enumerate() {
        let basis = GradedBasis::with_limit(shape, d, DEFAULT_BASIS_LIMIT)?;
        let mut ech = Echelon::new(basis);
        for (_, p) in ordered_products(shape, &stage_w, d, None) {
            ech.insert_poly(&p)?;
        }
        dims.push(ech.rank());
        report.record(
            format!("dim_{d} of stage {}", stage_index + 1),
            ech.rank() == expected,
            format!("rank {} vs series {expected}", ech.rank()),
        );
    }
    Ok(OreStepReport {
        stage: stage_index,
        member,
        eigenvalues,
        deltas,
        dims,
        expected_dims,
        report,
    })
}

/// `Σ c_i p_i == δ`, compared after clearing denominators.
fn recombines(delta: &NCPoly, coeffs: &[(String, RationalScalar)], products: &[(String, NCPoly)]) -> bool {
    let mut common = LaurentScalar::one();
    for (_, c) in coeffs {
        if !c.denom().is_one() {
            common = &common * c.denom();
        }
    }
    let common_rs = RationalScalar::from_laurent(common.clone());
    let mut acc = NCPoly::zero(delta.shape());
    for (label, c) in coeffs {
        let p = &products.iter().find(|(l, _)| l == label).expect("label from products").1;
        let scaled = c.mul(&common_rs).to_laurent().expect("denominators cleared");
        acc.add_scaled(p, &scaled);
    }
    acc == delta.scale(&common)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::build_frame;
    use crate::minors::MinorIndex;

    fn frame(m: usize, n: usize, rows: &[usize], cols: &[usize]) -> GammaFrame {
        build_frame(
            MatrixShape::new(m, n).unwrap(),
            &MinorIndex::new(rows.to_vec(), cols.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn series_oracle() {
        assert_eq!(pbw_series(&[1, 1, 1, 1, 2, 2, 2], 4), vec![1, 4, 13, 32, 71]);
        assert_eq!(pbw_series(&[1; 4], 3), vec![1, 4, 10, 20]);
        assert_eq!(pbw_series(&[], 2), vec![1, 0, 0]);
    }

    #[test]
    fn small_tower() {
        let f = frame(2, 2, &[1], &[1]);
        for stage in 0..2 {
            let r = ore_step_check(&f, stage, 3).unwrap();
            assert!(r.report.passed(), "{:?}", r.report.failures().collect::<Vec<_>>());
            assert_eq!(r.dims, r.expected_dims);
        }
        assert!(matches!(
            ore_step_check(&f, 2, 3),
            Err(GammaError::StageOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn example_frame_last_stage() {
        let f = frame(3, 3, &[1, 3], &[1, 2]);
        let r = ore_step_check(&f, 2, 2).unwrap();
        assert!(r.report.passed(), "{:?}", r.report.failures().collect::<Vec<_>>());
        assert_eq!(r.dims, vec![1, 4, 13]);
        assert!(r.report.checks.iter().any(|c| c.name.starts_with("(iv)")));
    }
}
