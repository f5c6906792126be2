use std::cmp::Ordering;

use super::MatrixShape;

/// A PBW monomial `x_11^e_11 x_12^e_12 ⋯ x_mn^e_mn`, generators in row-major
/// lexicographic order.
///
/// Monomials are ordered by degree, then lexicographically by their sorted
/// generator words, so `x11*x22` precedes `x12*x21`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderedMonomial {
    exps: Vec<u16>,
}

impl OrderedMonomial {
    pub fn one(num_generators: usize) -> Self {
        Self {
            exps: vec![0; num_generators],
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Self { exps }
    }

    /// Builds the sorted monomial with the given generator multiset.
    pub fn from_word(num_generators: usize, word: &[usize]) -> Self {
        let mut out = Self::one(num_generators);
        for &g in word {
            out.exps[g] += 1;
        }
        out
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn num_generators(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Generator indices in PBW order, with repetition.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (g, &e) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat_n(g, e as usize));
        }
        w
    }

    pub fn largest_generator(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub(crate) fn with_generator(&self, g: usize) -> Self {
        let mut out = self.clone();
        out.exps[g] += 1;
        out
    }

    pub(crate) fn without_generator(&self, g: usize) -> Self {
        let mut out = self.clone();
        out.exps[g] -= 1;
        out
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.exps[g] > 0
    }

    /// Product in the commutative polynomial ring.
    pub fn commutative_product(&self, other: &Self) -> Self {
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Multiplicity of each row index `1..=m`.
    pub fn row_weights(&self, shape: MatrixShape) -> Vec<usize> {
        let mut w = vec![0; shape.m()];
        for (g, &e) in self.exps.iter().enumerate() {
            w[g / shape.n()] += e as usize;
        }
        w
    }

    /// Multiplicity of each column index `1..=n`.
    pub fn col_weights(&self, shape: MatrixShape) -> Vec<usize> {
        let mut w = vec![0; shape.n()];
        for (g, &e) in self.exps.iter().enumerate() {
            w[g % shape.n()] += e as usize;
        }
        w
    }
}

impl Ord for OrderedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for OrderedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All PBW monomials of total degree `d`, in increasing monomial order.
/// There are `C(d + mn - 1, mn - 1)` of them.
pub fn graded_basis(shape: MatrixShape, d: usize) -> Vec<OrderedMonomial> {
    let n = shape.num_generators();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(d);
    fn rec(
        n: usize,
        d: usize,
        start: usize,
        word: &mut Vec<usize>,
        out: &mut Vec<OrderedMonomial>,
    ) {
        if word.len() == d {
            out.push(OrderedMonomial::from_word(n, word));
            return;
        }
        for g in start..n {
            word.push(g);
            rec(n, d, g, word, out);
            word.pop();
        }
    }
    rec(n, d, 0, &mut word, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_counts() {
        let s = MatrixShape::new(2, 2).unwrap();
        let b0 = graded_basis(s, 0);
        assert_eq!(b0.len(), 1);
        assert!(b0[0].is_one());
        let b1 = graded_basis(s, 1);
        let words: Vec<_> = b1.iter().map(|m| m.word()).collect();
        assert_eq!(words, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(graded_basis(s, 2).len(), 10);
        let s3 = MatrixShape::new(3, 3).unwrap();
        for d in 0..5 {
            assert_eq!(graded_basis(s3, d).len(), binomial(d + 8, 8));
        }
    }

    #[test]
    fn basis_is_sorted_and_distinct() {
        let s = MatrixShape::new(2, 3).unwrap();
        let b = graded_basis(s, 3);
        for w in b.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn order_matches_word_lex() {
        let a = OrderedMonomial::from_word(4, &[0, 3]);
        let b = OrderedMonomial::from_word(4, &[1, 2]);
        assert!(a < b);
        assert!(OrderedMonomial::from_word(4, &[3]) < b);
    }
}
