use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use qdet_core::factor::{
    basis_check, c_tau, ctau_residue, domain_check, hilbert_function, poset_above, regularity_check,
    standard_monomials, theta_injectivity_check, theta_relation_check, FactorError,
};
use qdet_core::gamma::{
    build_frame, check_h_actions, enumerate_m, gamma_normality_check, generator_count, mfamily_relations_check,
    ore_step_check, s_commutation_check, GammaFrame,
};
use qdet_core::linalg::{graded_dimension, rank, CoefficientVector, GradedBasis, LinalgError, ScalarMode, DEFAULT_BASIS_LIMIT};
use qdet_core::minors::{
    enumerate_minors, laplace_relation, laplace_relation_columns, minor_poly, minor_value, MinorIndex, MinorMethod,
};
use qdet_core::qfield::LaurentScalar;
use qdet_core::qmatrix::{graded_basis, MatrixShape, NCPoly};
use qdet_core::report::CheckReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cache;
use crate::config::{QMode, Suite, WorkbenchConfig};
use crate::parse::parse_gamma;
use crate::report::SuiteReport;
use crate::CliError;

const SEED: u64 = 0x5eed_0001;

/// Degree guard for quotient computations: 4 up to twelve generators,
/// 3 beyond.
pub fn factor_degree(shape: MatrixShape, max_degree: usize) -> usize {
    let guard = if shape.num_generators() <= 12 { 4 } else { 3 };
    max_degree.min(guard)
}

/// A random element of degree at most `max_degree` with at most
/// `max_terms` terms and small Laurent coefficients.
pub fn random_poly(rng: &mut impl Rng, shape: MatrixShape, max_degree: usize, max_terms: usize) -> NCPoly {
    let mut p = NCPoly::zero(shape);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let d = rng.gen_range(0..=max_degree);
        let basis = graded_basis(shape, d);
        let mono = basis[rng.gen_range(0..basis.len())].clone();
        let mut c = LaurentScalar::zero();
        for _ in 0..rng.gen_range(1..=2) {
            let num = rng.gen_range(-3i64..=3);
            let den = rng.gen_range(1i64..=3);
            c.add_term(
                rng.gen_range(-2..=2),
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            );
        }
        p.add_term(mono, c);
    }
    p
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
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
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

fn fmt_set(s: &[usize]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn pbw_suite(shape: MatrixShape, samples: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut report = CheckReport::new();
    let mut bad = None;
    for k in 0..samples {
        let a = random_poly(&mut rng, shape, 3, 2);
        let b = random_poly(&mut rng, shape, 3, 2);
        let c = random_poly(&mut rng, shape, 3, 2);
        if a.mul(&b).mul(&c) != a.mul(&b.mul(&c)) {
            bad = Some(format!("sample {k}: a={a}, b={b}, c={c}"));
            break;
        }
    }
    report.record(
        "associativity",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{samples} random triples of degree <= 3")),
    );
    let mut bad = None;
    for k in 0..samples {
        let a = random_poly(&mut rng, shape, 3, 2);
        let b = random_poly(&mut rng, shape, 3, 2);
        if a.mul(&b).specialize_at_one() != b.mul(&a).specialize_at_one() {
            bad = Some(format!("sample {k}: a={a}, b={b}"));
            break;
        }
    }
    report.record(
        "commutative at q=1",
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{samples} random pairs")),
    );
    report
}

pub fn laplace_suite(shape: MatrixShape) -> Result<CheckReport, CliError> {
    let (m, n) = (shape.m(), shape.n());
    let mut report = CheckReport::new();
    for k in 1..=3usize.min(m).min(n.saturating_sub(1)) {
        let mut count = 0;
        let mut bad = None;
        for rows in subsets(m, k) {
            for cols in subsets(n, k + 1) {
                for r in 1..=m {
                    let rel = laplace_relation(shape, &rows, &cols, r)?;
                    count += 1;
                    let v = rel.evaluate()?;
                    if !v.is_zero() && bad.is_none() {
                        bad = Some(format!("I={} J={} r={r}: residue {v}", fmt_set(&rows), fmt_set(&cols)));
                    }
                }
            }
        }
        report.record(
            format!("row form |I|={k}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{count} relations, residue 0")),
        );
    }
    for k in 1..=3usize.min(n).min(m.saturating_sub(1)) {
        let mut count = 0;
        let mut bad = None;
        for rows in subsets(m, k + 1) {
            for cols in subsets(n, k) {
                for s in 1..=n {
                    let rel = laplace_relation_columns(shape, &rows, &cols, s)?;
                    count += 1;
                    let v = rel.evaluate()?;
                    if !v.is_zero() && bad.is_none() {
                        bad = Some(format!("I={} J={} s={s}: residue {v}", fmt_set(&rows), fmt_set(&cols)));
                    }
                }
            }
        }
        report.record(
            format!("column form |J|={k}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{count} relations, residue 0")),
        );
    }
    Ok(report)
}

pub fn centrality_suite(shape: MatrixShape) -> Result<CheckReport, CliError> {
    let mut report = CheckReport::new();
    let x = |i, j| NCPoly::generator(shape, i, j).expect("inside the shape");
    if shape.m() == shape.n() {
        let all: Vec<usize> = (1..=shape.m()).collect();
        let det = minor_poly(shape, &MinorIndex::new(all.clone(), all)?)?;
        for i in 1..=shape.m() {
            for j in 1..=shape.n() {
                let g = x(i, j);
                report.record(format!("D_q central: x[{i},{j}]"), g.mul(&det) == det.mul(&g), "");
            }
        }
    } else {
        report.skip("D_q central", "shape is not square");
    }
    let minors = enumerate_minors(shape);
    for size in 1..=shape.m().min(shape.n()) {
        let mut count = 0;
        let mut bad = None;
        for mu in minors.iter().filter(|mu| mu.size() == size) {
            let v = minor_poly(shape, mu)?;
            for &i in mu.rows() {
                for &j in mu.cols() {
                    count += 1;
                    let g = x(i, j);
                    if g.mul(&v) != v.mul(&g) && bad.is_none() {
                        bad = Some(format!("x[{i},{j}] and {mu}"));
                    }
                }
            }
        }
        report.record(
            format!("entries commute with their minor, size {size}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{count} pairs")),
        );
    }
    Ok(report)
}

pub fn minors_suite(shape: MatrixShape) -> Result<CheckReport, CliError> {
    let mut report = CheckReport::new();
    let minors = enumerate_minors(shape);
    for size in 1..=shape.m().min(shape.n()) {
        let mut count = 0;
        let mut bad = None;
        for mu in minors.iter().filter(|mu| mu.size() == size) {
            count += 1;
            let a = minor_value(shape, mu, MinorMethod::PermSum)?;
            let b = minor_value(shape, mu, MinorMethod::LaplaceFirstRow)?;
            if a != b && bad.is_none() {
                bad = Some(format!("{mu}: expansions differ"));
            }
        }
        report.record(
            format!("expansions agree, size {size}"),
            bad.is_none(),
            bad.unwrap_or_else(|| format!("{count} minors")),
        );
    }
    Ok(report)
}

/// Basis of `O_q(M_mn)` by standard monomials, with ranks taken in the
/// configured scalar mode.
pub fn oq_basis_suite(shape: MatrixShape, dmax: usize, mode: &ScalarMode) -> Result<CheckReport, CliError> {
    let mut report = CheckReport::new();
    let minors = enumerate_minors(shape);
    for d in 0..=dmax {
        let basis = GradedBasis::with_limit(shape, d, DEFAULT_BASIS_LIMIT).map_err(FactorError::from)?;
        let std = standard_monomials(&minors, d);
        let mut vecs = Vec::new();
        for s in &std {
            vecs.push(CoefficientVector::from_poly(&basis, &s.evaluate(shape)?).map_err(FactorError::from)?);
        }
        let r = rank(&vecs, mode).map_err(FactorError::from)?;
        report.record(
            format!("d={d}: standard monomials form a basis"),
            r == std.len() && r == basis.len(),
            format!("{} monomials, rank {r}, dimension {}", std.len(), basis.len()),
        );
    }
    Ok(report)
}

fn ctau_suite(frame: &GammaFrame) -> Result<CheckReport, CliError> {
    let shape = frame.shape();
    let gamma = frame.gamma();
    let mut report = CheckReport::new();
    for tau in poset_above(shape, gamma)? {
        match c_tau(shape, gamma, &tau) {
            Ok(c) => {
                report.record(format!("c_tau {tau}"), !c.is_zero(), format!("c = {c}"));
            }
            Err(e @ (FactorError::NoScalarFound { .. } | FactorError::NotUnique { .. })) => {
                report.record(format!("c_tau {tau}"), false, e.to_string());
            }
            Err(e @ FactorError::Linalg(LinalgError::DegreeTooLarge { .. })) => {
                report.skip(format!("c_tau {tau}"), e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(report)
}

/// Checks a claimed `c` for `(γ, τ)`; a failure names both minors and the
/// residue of `γτ − c·τγ` modulo the ideal.
pub fn ctau_claim_check(
    shape: MatrixShape,
    gamma: &MinorIndex,
    tau: &MinorIndex,
    c: &LaurentScalar,
) -> Result<CheckReport, CliError> {
    let residue = ctau_residue(shape, gamma, tau, c)?;
    let mut report = CheckReport::new();
    let witness = if residue.is_zero() {
        format!("c = {c}")
    } else {
        format!("gamma {gamma}, tau {tau}, c = {c}: residue {residue}")
    };
    report.record(format!("c_tau {tau} claim"), residue.is_zero(), witness);
    Ok(report)
}

fn factor_suite(frame: &GammaFrame, dmax: usize) -> Result<CheckReport, CliError> {
    let shape = frame.shape();
    let gamma = frame.gamma();
    let mut report = CheckReport::new();
    for d in 0..=dmax {
        report.extend(basis_check(shape, Some(gamma), d)?);
    }
    let h = hilbert_function(shape, gamma, dmax)?;
    let poset = poset_above(shape, gamma)?;
    let counts: Vec<usize> = (0..=dmax).map(|d| standard_monomials(&poset, d).len()).collect();
    report.record(
        "Hilbert function",
        h == counts,
        format!("ideal ranks {h:?}, standard monomials {counts:?}"),
    );
    // products with γ land in degree |γ| + d; stay inside the basis guard
    let mut low = dmax.min(3);
    while low > 0 && graded_dimension(shape, gamma.size() + low) > DEFAULT_BASIS_LIMIT {
        report.skip(
            format!("regularity d={low}"),
            format!("degree {} is above the basis guard", gamma.size() + low),
        );
        low -= 1;
    }
    report.extend_prefixed("regularity ", regularity_check(shape, gamma, low)?);
    let low = dmax.min(3);
    report.extend_prefixed("domain ", domain_check(shape, gamma, low)?);
    Ok(report)
}

fn theta_suite(frame: &GammaFrame, dmax: usize) -> Result<CheckReport, CliError> {
    let shape = frame.shape();
    let mut report = CheckReport::new();
    for r in 1..=shape.m() {
        for s in 1..=shape.n() {
            report.extend(theta_relation_check(shape, frame.gamma(), r, s)?);
        }
    }
    report.extend_prefixed("injectivity ", theta_injectivity_check(frame, dmax)?);
    Ok(report)
}

fn ore_suite(frame: &GammaFrame, max_degree: usize) -> Result<CheckReport, CliError> {
    let mut report = CheckReport::new();
    frame.check_desk_scale(false)?;
    let stages = enumerate_m(frame).len();
    if stages == 0 {
        report.skip("tower", "no family members");
    }
    if max_degree < frame.t() {
        report.skip("tower", format!("max degree below |γ| = {}", frame.t()));
        return Ok(report);
    }
    for k in 0..stages {
        let step = ore_step_check(frame, k, max_degree)?;
        report.extend_prefixed(&format!("stage {} {}: ", k + 1, step.member), step.report);
    }
    Ok(report)
}

fn counts_suite(frame: &GammaFrame) -> CheckReport {
    let mut report = CheckReport::new();
    let (formula, count) = generator_count(frame);
    report.record(
        "generator count",
        formula == count,
        format!("(m+n+1)t - Σ(a_i+b_i) = {formula}, t² + |M| = {count}"),
    );
    report
}

fn mfamily_suite(frame: &GammaFrame) -> Result<CheckReport, CliError> {
    let mut report = mfamily_relations_check(frame);
    let (s, _) = s_commutation_check(frame)?;
    report.extend_prefixed("s-commutation ", s);
    Ok(report)
}

fn frame_suite(suite: Suite, frame: &GammaFrame, config: &WorkbenchConfig) -> Result<CheckReport, CliError> {
    let dmax = factor_degree(frame.shape(), config.max_degree);
    match suite {
        Suite::Mfamily => mfamily_suite(frame),
        Suite::Torus => Ok(check_h_actions(frame)),
        Suite::OreTower => ore_suite(frame, config.max_degree),
        Suite::GammaNormal => Ok(gamma_normality_check(frame)),
        Suite::FactorBasis => factor_suite(frame, dmax),
        Suite::Ctau => ctau_suite(frame),
        Suite::Theta => theta_suite(frame, dmax),
        Suite::Counts => Ok(counts_suite(frame)),
        Suite::Pbw | Suite::Laplace | Suite::Centrality | Suite::Minors => unreachable!("shape-level suite"),
    }
}

enum Task {
    Shape(Suite),
    Frame(Suite, MinorIndex),
}

fn scalar_mode(config: &WorkbenchConfig) -> ScalarMode {
    match &config.q_mode {
        QMode::Exact => ScalarMode::Exact,
        QMode::Specialize(v) => ScalarMode::Specialize(v.clone()),
    }
}

fn run_task(task: &Task, shape: MatrixShape, config: &WorkbenchConfig) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    let (suite, report, params) = match task {
        Task::Shape(suite) => {
            let mut params = BTreeMap::new();
            params.insert("shape".to_string(), shape.to_string());
            let report = match suite {
                Suite::Pbw => {
                    params.insert("samples".to_string(), config.samples.to_string());
                    Ok(pbw_suite(shape, config.samples))
                }
                Suite::Laplace => laplace_suite(shape),
                Suite::Centrality => centrality_suite(shape),
                Suite::Minors => minors_suite(shape),
                Suite::FactorBasis => {
                    let d = factor_degree(shape, config.max_degree);
                    params.insert("max_degree".to_string(), d.to_string());
                    params.insert("gamma".to_string(), "none".to_string());
                    oq_basis_suite(shape, d, &scalar_mode(config))
                }
                _ => unreachable!("frame suite"),
            };
            (*suite, report, params)
        }
        Task::Frame(suite, gamma) => {
            let mut params = BTreeMap::new();
            params.insert("shape".to_string(), shape.to_string());
            params.insert("gamma".to_string(), gamma.to_string());
            params.insert("max_degree".to_string(), config.max_degree.to_string());
            let uses_ideal = matches!(suite, Suite::FactorBasis | Suite::Ctau | Suite::Theta);
            if uses_ideal {
                if let Some(dir) = &config.cache_dir {
                    cache::warm(dir, shape, gamma);
                }
            }
            let report = build_frame(shape, gamma)
                .map_err(CliError::from)
                .and_then(|frame| frame_suite(*suite, &frame, config));
            if uses_ideal && report.is_ok() {
                if let Some(dir) = &config.cache_dir {
                    cache::store(dir, shape, gamma);
                }
            }
            (*suite, report, params)
        }
    };
    let report = report.map_err(|e| CliError::Suite {
        suite: suite.name().to_string(),
        message: e.to_string(),
    })?;
    let ms = if config.timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let mut out = SuiteReport::new(suite.name(), params);
    out.absorb(report, ms);
    Ok(out)
}

/// Runs the configured suites. Reports come back in suite order, then in
/// the enumeration order of `γ`, whatever the number of workers.
pub fn run_suite(config: &WorkbenchConfig) -> Result<Vec<SuiteReport>, CliError> {
    let shape = MatrixShape::new(config.m, config.n).map_err(|e| CliError::Config(e.to_string()))?;
    if config.max_degree < 1 {
        return Err(CliError::Config("max degree must be at least 1".to_string()));
    }
    let gammas = match &config.gamma {
        Some(text) => {
            let g = parse_gamma(text)?;
            g.check_fits(shape).map_err(|e| CliError::Config(e.to_string()))?;
            vec![g]
        }
        None => enumerate_minors(shape),
    };
    let mut tasks = Vec::new();
    for &suite in &config.suites {
        if suite == Suite::FactorBasis || !suite.per_gamma() {
            tasks.push(Task::Shape(suite));
        }
        if suite.per_gamma() {
            tasks.extend(gammas.iter().map(|g| Task::Frame(suite, g.clone())));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    pool.install(|| tasks.par_iter().map(|t| run_task(t, shape, config)).collect())
}
