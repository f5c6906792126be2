//! Reduction of words in the generators `x_ij` to PBW normal form.
//!
//! For generators `y = x_kl` and `g = x_ij` with `y` lexicographically after
//! `g`, the defining relations give
//!
//! * same row or same column: `y g = q⁻¹ g y`
//! * `k > i`, `l < j`: `y g = g y`
//! * `k > i`, `l > j`: `y g = g y - q̂ x_il x_kj`

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::{AlgebraError, MatrixShape, NCPoly, OrderedMonomial};
use crate::qfield::LaurentScalar;

/// Result of moving `g` leftwards past `y` where `y > g`.
pub(crate) struct Swap {
    /// Coefficient of `g y`.
    pub coeff: LaurentScalar,
    /// `(x_il, x_kj)` when the diagonal relation adds `-q̂ x_il x_kj`.
    pub correction: Option<(usize, usize)>,
}

pub(crate) fn swap_rule(shape: MatrixShape, y: usize, g: usize) -> Swap {
    debug_assert!(y > g);
    let (k, l) = shape.generator_position(y);
    let (i, j) = shape.generator_position(g);
    if k == i || l == j {
        Swap {
            coeff: LaurentScalar::q_pow(-1),
            correction: None,
        }
    } else if l < j {
        Swap {
            coeff: LaurentScalar::one(),
            correction: None,
        }
    } else {
        let il = (i - 1) * shape.n() + (l - 1);
        let kj = (k - 1) * shape.n() + (j - 1);
        Swap {
            coeff: LaurentScalar::one(),
            correction: Some((il, kj)),
        }
    }
}

/// Normal form of a word by repeated adjacent swaps at the rightmost
/// inversion. Correction terms are queued as fresh words.
pub fn normal_form(word: &[(usize, usize)], shape: MatrixShape) -> Result<NCPoly, AlgebraError> {
    let gens: Vec<usize> = word
        .iter()
        .map(|&(i, j)| shape.generator_index(i, j))
        .collect::<Result<_, _>>()?;
    let mut out = NCPoly::zero(shape);
    let mut queue = vec![(LaurentScalar::one(), gens)];
    while let Some((c, mut w)) = queue.pop() {
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).rev().find(|&p| w[p] > w[p + 1]) {
            None => out.add_term(OrderedMonomial::from_word(shape.num_generators(), &w), c),
            Some(p) => {
                let rule = swap_rule(shape, w[p], w[p + 1]);
                if let Some((il, kj)) = rule.correction {
                    let mut w2 = w.clone();
                    w2[p] = il;
                    w2[p + 1] = kj;
                    queue.push((&c * &-LaurentScalar::q_hat(), w2));
                }
                w.swap(p, p + 1);
                queue.push((&c * &rule.coeff, w));
            }
        }
    }
    Ok(out)
}

type GenKey = (MatrixShape, OrderedMonomial, usize);
type MonoKey = (MatrixShape, OrderedMonomial, OrderedMonomial);

thread_local! {
    static GEN_CACHE: RefCell<HashMap<GenKey, Rc<NCPoly>>> = RefCell::new(HashMap::new());
    static MONO_CACHE: RefCell<HashMap<MonoKey, Rc<NCPoly>>> = RefCell::new(HashMap::new());
}

/// `mono · x_g` in normal form.
pub(crate) fn mono_times_gen(shape: MatrixShape, mono: &OrderedMonomial, g: usize) -> Rc<NCPoly> {
    match mono.largest_generator() {
        Some(y) if y > g => {}
        _ => {
            return Rc::new(NCPoly::monomial(shape, mono.with_generator(g)));
        }
    }
    let key = (shape, mono.clone(), g);
    if let Some(hit) = GEN_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let y = mono.largest_generator().unwrap();
    let rest = mono.without_generator(y);
    let rule = swap_rule(shape, y, g);
    let mut out = NCPoly::zero(shape);
    // rest · g · y
    let left = mono_times_gen(shape, &rest, g);
    for (m, c) in left.terms() {
        out.add_scaled(&mono_times_gen(shape, m, y), &(c * &rule.coeff));
    }
    if let Some((il, kj)) = rule.correction {
        let corr = -LaurentScalar::q_hat();
        let left = mono_times_gen(shape, &rest, il);
        for (m, c) in left.terms() {
            out.add_scaled(&mono_times_gen(shape, m, kj), &(c * &corr));
        }
    }
    let out = Rc::new(out);
    GEN_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// `a · b` for PBW monomials, in normal form.
pub(crate) fn mono_times_mono(shape: MatrixShape, a: &OrderedMonomial, b: &OrderedMonomial) -> Rc<NCPoly> {
    if b.is_one() {
        return Rc::new(NCPoly::monomial(shape, a.clone()));
    }
    if a.is_one() {
        return Rc::new(NCPoly::monomial(shape, b.clone()));
    }
    let key = (shape, a.clone(), b.clone());
    if let Some(hit) = MONO_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut acc = NCPoly::monomial(shape, a.clone());
    for g in b.word() {
        let mut next = NCPoly::zero(shape);
        for (m, c) in acc.terms() {
            next.add_scaled(&mono_times_gen(shape, m, g), c);
        }
        acc = next;
    }
    let out = Rc::new(acc);
    MONO_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    out
}

/// Number of inverted pairs among row indices and among column indices of
/// a word. Every rewriting step strictly decreases this pair
/// lexicographically, in both of its output words.
pub fn row_col_inversions(shape: MatrixShape, word: &[usize]) -> (usize, usize) {
    let pos: Vec<(usize, usize)> = word.iter().map(|&g| shape.generator_position(g)).collect();
    let mut rows = 0;
    let mut cols = 0;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            rows += usize::from(pos[a].0 > pos[b].0);
            cols += usize::from(pos[a].1 > pos[b].1);
        }
    }
    (rows, cols)
}
