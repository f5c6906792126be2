//! Bounded-degree evidence for the structure of `J_γ`: the relations that
//! put every `x̄_rs` in the image of the tower, regularity of `γ̄`, absence
//! of zero divisors among standard monomials, and injectivity of the tower
//! map in low degree.

use super::{poset_above, standard_monomials, with_ideal, FactorError};
use crate::gamma::{build_frame, enumerate_m, generator_products, pbw_series, GammaFrame};
use crate::minors::{laplace_relation, laplace_relation_columns, le_st, minor_poly, MinorIndex};
use crate::qmatrix::{MatrixShape, NCPoly};
use crate::report::CheckReport;

/// Maps the Laplace relation through `x_rs` into `J_γ` and checks that it
/// expresses `x̄_rs·γ̄` through surviving terms whose minors lie in
/// `{γ} ∪ M`.
pub fn theta_relation_check(
    shape: MatrixShape,
    gamma: &MinorIndex,
    r: usize,
    s: usize,
) -> Result<CheckReport, FactorError> {
    if !shape.contains(r, s) {
        return Err(FactorError::IndexOutOfShape { r, s, shape });
    }
    let frame = build_frame(shape, gamma)?;
    let (a, b) = (frame.rows(), frame.cols());
    let mut report = CheckReport::new();
    let name = format!("x[{r},{s}]");
    if a.contains(&r) && b.contains(&s) {
        report.record(format!("{name} generator"), true, "generator of S");
        return Ok(report);
    }
    let relation = if !b.contains(&s) {
        let mut cols = b.to_vec();
        cols.push(s);
        cols.sort_unstable();
        laplace_relation(shape, a, &cols, r)?
    } else {
        let mut rows = a.to_vec();
        rows.push(r);
        rows.sort_unstable();
        laplace_relation_columns(shape, &rows, b, s)?
    };
    report.record(
        format!("{name} relation exact"),
        relation.holds()?,
        "Laplace relation reduces to 0",
    );
    let members: Vec<MinorIndex> = enumerate_m(&frame).into_iter().map(|m| m.value).collect();
    let mut surviving = NCPoly::zero(shape);
    let mut main_found = false;
    with_ideal(shape, gamma, |tw| {
        for term in &relation.terms {
            let value = relation.evaluate_product(&term.factors)?;
            let label: String = term.factors.iter().map(ToString::to_string).collect();
            let minor = term.factors.last().expect("nonempty term");
            if term.factors.len() == 1 {
                let dies = !le_st(gamma, minor)? && tw.contains(&value)?;
                report.record(
                    format!("{name} (t+1)-minor {label} dies"),
                    dies,
                    format!("size {} minor below γ", minor.size()),
                );
                continue;
            }
            if minor == gamma {
                main_found = true;
                surviving.add_scaled(&value, &term.coeff);
            } else if le_st(gamma, minor)? {
                report.record(
                    format!("{name} term {label} survives in M"),
                    members.contains(minor),
                    format!("coefficient {}", term.coeff),
                );
                surviving.add_scaled(&value, &term.coeff);
            } else {
                report.record(
                    format!("{name} term {label} dies"),
                    tw.contains(&value)?,
                    "minor not above γ",
                );
            }
        }
        report.record(format!("{name} carries x·γ"), main_found, "");
        let ok = tw.contains(&surviving)?;
        let witness = if ok {
            "residual 0".to_string()
        } else {
            let d = gamma.size() + 1;
            format!("residue {}", tw.residue(&surviving, d)?.0)
        };
        report.record(format!("{name} residual in J_γ"), ok, witness);
        Ok(())
    })?;
    Ok(report)
}

/// `rank(I_{d+|γ|} ∪ γ·J_d) = rank(I_{d+|γ|}) + dim_d J_γ` for `d ≤ dmax`.
pub fn regularity_check(shape: MatrixShape, gamma: &MinorIndex, dmax: usize) -> Result<CheckReport, FactorError> {
    let g = minor_poly(shape, gamma)?;
    let mut report = CheckReport::new();
    with_ideal(shape, gamma, |tw| {
        for d in 0..=dmax {
            let reps = tw.quotient_representatives(d)?;
            let mut e = tw.component(d + gamma.size())?.clone();
            let mut independent = 0;
            for m in &reps {
                let p = g.mul(&NCPoly::monomial(shape, m.clone()));
                if e.insert_poly(&tw.project(&p))? {
                    independent += 1;
                }
            }
            report.record(
                format!("d={d}: γ·p in I implies p in I"),
                independent == reps.len(),
                format!("{independent} of {} independent", reps.len()),
            );
        }
        Ok(())
    })?;
    Ok(report)
}

/// Products of two standard monomials on `Π ∖ Π_γ` with total degree at most
/// `dmax` stay outside `I_γ`.
pub fn domain_check(shape: MatrixShape, gamma: &MinorIndex, dmax: usize) -> Result<CheckReport, FactorError> {
    let poset = poset_above(shape, gamma)?;
    let mut by_degree = Vec::new();
    for d in 0..dmax {
        let mut vals = Vec::new();
        for sm in standard_monomials(&poset, d) {
            let v = sm.evaluate(shape)?;
            vals.push((sm, v));
        }
        by_degree.push(vals);
    }
    let mut report = CheckReport::new();
    with_ideal(shape, gamma, |tw| {
        for d1 in 1..dmax {
            for d2 in 1..=dmax - d1 {
                let mut bad = None;
                let mut count = 0;
                'pairs: for (sa, a) in &by_degree[d1] {
                    for (sb, b) in &by_degree[d2] {
                        count += 1;
                        if tw.contains(&a.mul(b))? {
                            bad = Some(format!("{sa} * {sb} lies in the ideal"));
                            break 'pairs;
                        }
                    }
                }
                report.record(
                    format!("degrees {d1}+{d2}: no zero products"),
                    bad.is_none(),
                    bad.unwrap_or_else(|| format!("{count} products")),
                );
            }
        }
        Ok(())
    })?;
    Ok(report)
}

/// The degree `d` ordered products of the tower generators stay independent
/// modulo `I_γ`, as many as the PBW count of the tower predicts.
pub fn theta_injectivity_check(frame: &GammaFrame, dmax: usize) -> Result<CheckReport, FactorError> {
    let shape = frame.shape();
    let gens = frame.tower_generators();
    let degrees: Vec<usize> = gens.iter().map(|g| g.degree()).collect();
    let expected = pbw_series(&degrees, dmax);
    let mut report = CheckReport::new();
    with_ideal(shape, frame.gamma(), |tw| {
        for (d, &want) in expected.iter().enumerate() {
            let mut e = tw.component(d)?.clone();
            let before = e.rank();
            for (_, p) in generator_products(shape, &gens, d) {
                e.insert_poly(&tw.project(&p))?;
            }
            let got = e.rank() - before;
            report.record(
                format!("d={d}: image dimension"),
                got == want,
                format!("{got} independent images, tower dimension {want}"),
            );
        }
        Ok(())
    })?;
    Ok(report)
}
