//! The quantum matrix algebra `O_q(M_mn)`: PBW normal forms, multiplication,
//! grading, and the torus action.

mod monomial;
mod poly;
mod rewrite;
mod shape;
mod torus;

use thiserror::Error;

pub use monomial::{graded_basis, OrderedMonomial};
pub use poly::NCPoly;
pub use rewrite::{normal_form, row_col_inversions};
pub use shape::MatrixShape;
pub use torus::{torus_act, TorusElement};

use crate::qfield::{QFieldError, RationalScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix shape must have m, n >= 1")]
    EmptyShape,
    #[error("index ({i},{j}) is outside the {shape} shape")]
    IndexOutOfShape { i: usize, j: usize, shape: MatrixShape },
    #[error("shape mismatch: {0} vs {1}")]
    ShapeMismatch(MatrixShape, MatrixShape),
    #[error("torus element does not fit the {0} shape")]
    TorusShapeMismatch(MatrixShape),
    #[error("torus entries must be single-term Laurent scalars")]
    NotAUnit,
    #[error("q-commutation is undefined for a zero input")]
    ZeroInput,
    #[error(transparent)]
    Scalar(#[from] QFieldError),
}

/// `p1 · p2` in `O_q(M_mn)`.
pub fn multiply(p1: &NCPoly, p2: &NCPoly) -> Result<NCPoly, AlgebraError> {
    p1.try_mul(p2)
}

/// The scalar `c` with `a·b = c·b·a`, if one exists.
pub fn q_commute_scalar(a: &NCPoly, b: &NCPoly) -> Result<Option<RationalScalar>, AlgebraError> {
    if a.is_zero() || b.is_zero() {
        return Err(AlgebraError::ZeroInput);
    }
    let ab = a.try_mul(b)?;
    let ba = b.mul(a);
    let Some((mono, denom)) = ba.terms().next() else {
        return Ok(None);
    };
    let Some(numer) = ab.coeff(mono) else {
        return Ok(None);
    };
    let c = RationalScalar::new(numer.clone(), denom.clone())?;
    // ab·den(c) == ba·num(c), which avoids rational coefficients in NCPoly
    let lhs = ab.scale(c.denom());
    let rhs = ba.scale(c.numer());
    Ok((lhs == rhs).then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::LaurentScalar;
    use proptest::prelude::*;

    fn shape(m: usize, n: usize) -> MatrixShape {
        MatrixShape::new(m, n).unwrap()
    }

    fn x(s: MatrixShape, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(s, i, j).unwrap()
    }

    #[test]
    fn same_row_swap() {
        let s = shape(2, 2);
        let nf = normal_form(&[(1, 2), (1, 1)], s).unwrap();
        let expected = x(s, 1, 1).mul(&x(s, 1, 2)).scale(&LaurentScalar::q_pow(-1));
        assert_eq!(nf, expected);
        assert_eq!(nf.to_string(), "q^-1*x[1,1]*x[1,2]");
    }

    #[test]
    fn diagonal_swap() {
        let s = shape(2, 2);
        let nf = normal_form(&[(2, 2), (1, 1)], s).unwrap();
        assert_eq!(nf.to_string(), "x[1,1]*x[2,2] - (q - q^-1)*x[1,2]*x[2,1]");
    }

    #[test]
    fn antidiagonal_swap() {
        let s = shape(2, 2);
        let nf = normal_form(&[(2, 1), (1, 2)], s).unwrap();
        assert_eq!(nf.to_string(), "x[1,2]*x[2,1]");
    }

    #[test]
    fn out_of_shape() {
        let s = shape(2, 2);
        assert!(matches!(
            normal_form(&[(3, 1)], s),
            Err(AlgebraError::IndexOutOfShape { .. })
        ));
        assert!(NCPoly::generator(s, 1, 0).is_err());
        assert_eq!(MatrixShape::new(0, 2), Err(AlgebraError::EmptyShape));
    }

    #[test]
    fn multiply_examples() {
        let s = shape(2, 2);
        let x11 = x(s, 1, 1);
        assert_eq!(x11.mul(&x11).to_string(), "x[1,1]^2");
        let dq = x11
            .mul(&x(s, 2, 2))
            .try_sub(&x(s, 1, 2).mul(&x(s, 2, 1)).scale(&LaurentScalar::q()))
            .unwrap();
        assert_eq!(dq.mul(&x11), x11.mul(&dq));
        let one = NCPoly::one(s);
        assert_eq!(one.mul(&dq), dq);
        assert!(multiply(&x11, &NCPoly::one(shape(1, 1))).is_err());
    }

    #[test]
    fn torus_examples() {
        let s = shape(1, 1);
        let h = TorusElement::new(vec![LaurentScalar::q()], vec![LaurentScalar::one()]).unwrap();
        let x11 = x(s, 1, 1);
        assert_eq!(torus_act(&h, &x11).unwrap(), x11.scale(&LaurentScalar::q()));
        let id = TorusElement::identity(shape(2, 2));
        let p = x(shape(2, 2), 2, 2).mul(&x(shape(2, 2), 1, 1));
        assert_eq!(torus_act(&id, &p).unwrap(), p);
        assert!(TorusElement::new(vec![LaurentScalar::q_hat()], vec![LaurentScalar::one()]).is_err());
        assert!(torus_act(&id, &x11).is_err());
    }

    #[test]
    fn q_commutation_examples() {
        let s = shape(2, 2);
        let c = q_commute_scalar(&x(s, 1, 1), &x(s, 1, 2)).unwrap().unwrap();
        assert_eq!(c.to_laurent(), Some(LaurentScalar::q()));
        assert_eq!(q_commute_scalar(&x(s, 1, 1), &x(s, 2, 2)).unwrap(), None);
        let p = x(s, 2, 2).mul(&x(s, 1, 1));
        assert!(q_commute_scalar(&p, &p).unwrap().unwrap().is_one());
        assert_eq!(
            q_commute_scalar(&NCPoly::zero(s), &p),
            Err(AlgebraError::ZeroInput)
        );
    }

    fn lc(c: i64, e: i32) -> LaurentScalar {
        LaurentScalar::monomial(num_rational::BigRational::from_integer(c.into()), e)
    }

    fn arb_word(s: MatrixShape, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0..s.num_generators(), 0..=max_len)
    }

    fn arb_poly(s: MatrixShape, max_deg: usize) -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((arb_word(s, max_deg), -2i32..=2, -3i64..=3), 1..4).prop_map(move |ts| {
            let mut p = NCPoly::zero(s);
            for (w, e, c) in ts {
                let pairs: Vec<_> = w.iter().map(|&g| s.generator_position(g)).collect();
                let term = normal_form(&pairs, s).unwrap();
                p.add_scaled(&term, &lc(c, e));
            }
            p
        })
    }

    fn arb_homogeneous(s: MatrixShape, d: usize) -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((prop::collection::vec(0..s.num_generators(), d), -1i32..=1, 1i64..=2), 1..3)
            .prop_map(move |ts| {
                let mut p = NCPoly::zero(s);
                for (w, e, c) in ts {
                    let pairs: Vec<_> = w.iter().map(|&g| s.generator_position(g)).collect();
                    p.add_scaled(&normal_form(&pairs, s).unwrap(), &lc(c, e));
                }
                p
            })
    }

    fn arb_torus(s: MatrixShape) -> impl Strategy<Value = TorusElement> {
        let unit = (-2i32..=2, prop::sample::select(vec![1i64, -1, 2, 3]))
            .prop_map(|(e, c)| lc(c, e));
        (
            prop::collection::vec(unit.clone(), s.m()),
            prop::collection::vec(unit, s.n()),
        )
            .prop_map(|(a, b)| TorusElement::new(a, b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn word_rewriting_agrees_with_multiplication(w in arb_word(shape(3, 3), 5)) {
            let s = shape(3, 3);
            let pairs: Vec<_> = w.iter().map(|&g| s.generator_position(g)).collect();
            let direct = normal_form(&pairs, s).unwrap();
            let folded = pairs.iter().fold(NCPoly::one(s), |acc, &(i, j)| acc.mul(&x(s, i, j)));
            prop_assert_eq!(direct, folded);
        }

        #[test]
        fn associativity(a in arb_poly(shape(3, 3), 3), b in arb_poly(shape(3, 3), 3), c in arb_poly(shape(3, 3), 3)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn bidegree_is_additive(a in arb_homogeneous(shape(2, 3), 2), b in arb_homogeneous(shape(2, 3), 1)) {
            // monomials of a single bidegree
            let s = shape(2, 3);
            for (ma, _) in a.terms() {
                for (mb, _) in b.terms() {
                    let prod = NCPoly::monomial(s, ma.clone()).mul(&NCPoly::monomial(s, mb.clone()));
                    let expect_rows: Vec<usize> = ma.row_weights(s).iter().zip(mb.row_weights(s)).map(|(x, y)| x + y).collect();
                    let expect_cols: Vec<usize> = ma.col_weights(s).iter().zip(mb.col_weights(s)).map(|(x, y)| x + y).collect();
                    prop_assert_eq!(prod.bidegree(), Some((expect_rows, expect_cols)));
                    prop_assert_eq!(prod.degree(), Some(ma.degree() + mb.degree()));
                }
            }
        }

        #[test]
        fn specialization_at_one_is_commutative(a in arb_poly(shape(2, 3), 3), b in arb_poly(shape(2, 3), 3)) {
            let ab = a.mul(&b).specialize_at_one();
            let ba = b.mul(&a).specialize_at_one();
            prop_assert_eq!(&ab, &ba);
            // and equals the commutative product of the specializations
            let mut expected = std::collections::BTreeMap::new();
            for (ea, ca) in a.specialize_at_one() {
                for (eb, cb) in b.specialize_at_one() {
                    let e: Vec<u16> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                    *expected.entry(e).or_insert_with(|| num_rational::BigRational::from_integer(0.into())) += &ca * &cb;
                }
            }
            expected.retain(|_, v: &mut num_rational::BigRational| *v != num_rational::BigRational::from_integer(0.into()));
            prop_assert_eq!(ab, expected);
        }

        #[test]
        fn torus_acts_by_automorphisms(h in arb_torus(shape(2, 3)), a in arb_poly(shape(2, 3), 2), b in arb_poly(shape(2, 3), 2)) {
            let lhs = torus_act(&h, &a.mul(&b)).unwrap();
            let rhs = torus_act(&h, &a).unwrap().mul(&torus_act(&h, &b).unwrap());
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(torus_act(&h.inverse(), &torus_act(&h, &a).unwrap()).unwrap(), a);
        }

        #[test]
        fn rewriting_measure_decreases(w in arb_word(shape(3, 3), 6)) {
            let s = shape(3, 3);
            if let Some(p) = (0..w.len().saturating_sub(1)).rev().find(|&p| w[p] > w[p + 1]) {
                let before = row_col_inversions(s, &w);
                let rule = rewrite::swap_rule(s, w[p], w[p + 1]);
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                prop_assert!(row_col_inversions(s, &swapped) < before);
                if let Some((il, kj)) = rule.correction {
                    let mut corrected = w.clone();
                    corrected[p] = il;
                    corrected[p + 1] = kj;
                    prop_assert!(row_col_inversions(s, &corrected) < before);
                }
            }
        }
    }
}
