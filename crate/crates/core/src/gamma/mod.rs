//! The frame of a minor `γ = [A|B]`: complements, the families `m_ij` and
//! `n_ij`, the tower `S ⊆ R(·) ⊆ T`, the torus elements `h_{m_kl}`,
//! `h_{n_kl}`, and checks of the commutation relations among them.

mod checks;
mod ore;

use std::fmt;

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::minors::{minor_poly, MinorError, MinorIndex};
use crate::qfield::LaurentScalar;
use crate::qmatrix::{MatrixShape, NCPoly, TorusElement};

pub use checks::{
    check_h_actions, check_h_actions_with, gamma_normality_check, mfamily_relations_check, s_commutation_check,
    SCoefficient,
};
pub(crate) use ore::generator_products;
pub use ore::{ore_step_check, pbw_series, DeltaWitness, OreStepReport};

/// Frames on shapes with more than this many generators are refused unless
/// forced.
pub const MAX_FRAME_GENERATORS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("the empty minor has no frame")]
    EmptyMinor,
    #[error("{0} is not a member of the family for this frame")]
    UndefinedMember(String),
    #[error("stage {index} is out of range; the tower has {len} stages")]
    StageOutOfRange { index: usize, len: usize },
    #[error("degree bound {given} is below the degree {needed} of the new generator")]
    DegreeTooSmall { given: usize, needed: usize },
    #[error("shape {0} is beyond desk scale")]
    ShapeTooLarge(MatrixShape),
    #[error(transparent)]
    Minor(#[from] MinorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `γ = [A|B]` inside an `m × n` shape, with the missing row and column
/// indices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaFrame {
    shape: MatrixShape,
    gamma: MinorIndex,
    row_complement: Vec<usize>,
    col_complement: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    /// Same row set as `γ`: the `m_ij`.
    R,
    /// Same column set as `γ`: the `n_ij`.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub kind: FamilyKind,
    pub i: usize,
    pub j: usize,
    pub value: MinorIndex,
    /// Rank in the total order on the family, from 0.
    pub position: usize,
}

impl fmt::Display for FamilyMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            FamilyKind::R => 'm',
            FamilyKind::C => 'n',
        };
        write!(f, "{letter}_{}{}={}", self.i, self.j, self.value)
    }
}

impl GammaFrame {
    pub fn new(shape: MatrixShape, gamma: MinorIndex) -> Result<Self, GammaError> {
        if gamma.is_empty() {
            return Err(GammaError::EmptyMinor);
        }
        gamma.check_fits(shape)?;
        let row_complement = (1..=shape.m()).filter(|r| !gamma.rows().contains(r)).collect();
        let col_complement = (1..=shape.n()).filter(|c| !gamma.cols().contains(c)).collect();
        Ok(Self {
            shape,
            gamma,
            row_complement,
            col_complement,
        })
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn gamma(&self) -> &MinorIndex {
        &self.gamma
    }

    pub fn t(&self) -> usize {
        self.gamma.size()
    }

    pub fn rows(&self) -> &[usize] {
        self.gamma.rows()
    }

    pub fn cols(&self) -> &[usize] {
        self.gamma.cols()
    }

    pub fn row_complement(&self) -> &[usize] {
        &self.row_complement
    }

    pub fn col_complement(&self) -> &[usize] {
        &self.col_complement
    }

    /// `c_{(n-t+1)-i}` for `1 ≤ i ≤ n - t`.
    pub fn c_for(&self, i: usize) -> usize {
        self.col_complement[self.col_complement.len() - i]
    }

    /// `r_{(m-t+1)-i}` for `1 ≤ i ≤ m - t`.
    pub fn r_for(&self, i: usize) -> usize {
        self.row_complement[self.row_complement.len() - i]
    }

    /// The generators `x_{a_i b_j}` of `S`, lexicographic in `(i, j)`.
    pub fn s_generators(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in self.rows() {
            for &b in self.cols() {
                out.push((a, b));
            }
        }
        out
    }

    /// `m_ij`, when defined.
    pub fn m(&self, i: usize, j: usize) -> Option<MinorIndex> {
        if i == 0 || i > self.col_complement.len() || j == 0 || j > self.t() {
            return None;
        }
        let c = self.c_for(i);
        let b = self.cols()[j - 1];
        (b < c).then(|| {
            let cols = self.cols().iter().copied().filter(|&x| x != b).chain([c]).collect();
            MinorIndex::from_sets(self.rows().to_vec(), cols).expect("distinct indices")
        })
    }

    /// `n_ij`, when defined.
    pub fn n(&self, i: usize, j: usize) -> Option<MinorIndex> {
        if i == 0 || i > self.row_complement.len() || j == 0 || j > self.t() {
            return None;
        }
        let r = self.r_for(i);
        let a = self.rows()[j - 1];
        (a < r).then(|| {
            let rows = self.rows().iter().copied().filter(|&x| x != a).chain([r]).collect();
            MinorIndex::from_sets(rows, self.cols().to_vec()).expect("distinct indices")
        })
    }

    pub fn member(&self, kind: FamilyKind, i: usize, j: usize) -> Option<MinorIndex> {
        match kind {
            FamilyKind::R => self.m(i, j),
            FamilyKind::C => self.n(i, j),
        }
    }

    /// The full generating sequence of `T`: the `x_{a_i b_j}`, then the
    /// family in order.
    pub fn tower_generators(&self) -> Vec<TowerGenerator> {
        let mut out: Vec<TowerGenerator> = self
            .s_generators()
            .into_iter()
            .map(|(a, b)| TowerGenerator::entry(self.shape, a, b))
            .collect();
        for member in enumerate_m(self) {
            out.push(TowerGenerator::member(self.shape, &member));
        }
        out
    }

    pub fn check_desk_scale(&self, force: bool) -> Result<(), GammaError> {
        if !force && self.shape.num_generators() > MAX_FRAME_GENERATORS {
            return Err(GammaError::ShapeTooLarge(self.shape));
        }
        Ok(())
    }
}

pub fn build_frame(shape: MatrixShape, gamma: &MinorIndex) -> Result<GammaFrame, GammaError> {
    GammaFrame::new(shape, gamma.clone())
}

/// All defined `m_ij`, then all defined `n_ij`, each lexicographic in
/// `(i, j)`.
pub fn enumerate_m(frame: &GammaFrame) -> Vec<FamilyMember> {
    let mut out = Vec::new();
    for (kind, range) in [
        (FamilyKind::R, frame.col_complement.len()),
        (FamilyKind::C, frame.row_complement.len()),
    ] {
        for i in 1..=range {
            for j in 1..=frame.t() {
                if let Some(value) = frame.member(kind, i, j) {
                    let position = out.len();
                    out.push(FamilyMember {
                        kind,
                        i,
                        j,
                        value,
                        position,
                    });
                }
            }
        }
    }
    out
}

/// One generator of a tower stage with its expansion.
#[derive(Debug, Clone)]
pub struct TowerGenerator {
    pub label: String,
    pub minor: MinorIndex,
    pub value: NCPoly,
}

impl TowerGenerator {
    fn entry(shape: MatrixShape, a: usize, b: usize) -> Self {
        Self {
            label: format!("x[{a},{b}]"),
            minor: MinorIndex::single(a, b),
            value: NCPoly::generator(shape, a, b).expect("inside the shape"),
        }
    }

    fn member(shape: MatrixShape, member: &FamilyMember) -> Self {
        Self {
            label: member.to_string(),
            minor: member.value.clone(),
            value: (*minor_poly(shape, &member.value).expect("inside the shape")).clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.minor.size()
    }
}

/// How the `α` entry equal to `q` is placed in `h_{n_kl}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NTorusReading {
    /// `α_{a_l} = q`, matching the row/column mirror of `h_{m_kl}`.
    #[default]
    RowOfGamma,
    /// `α_l = q` with `l` read as a row index.
    Literal,
}

pub fn torus_element_for(frame: &GammaFrame, member: &FamilyMember) -> Result<TorusElement, GammaError> {
    torus_element_with(frame, member, NTorusReading::default())
}

pub fn torus_element_with(
    frame: &GammaFrame,
    member: &FamilyMember,
    reading: NTorusReading,
) -> Result<TorusElement, GammaError> {
    if frame.member(member.kind, member.i, member.j).as_ref() != Some(&member.value) {
        return Err(GammaError::UndefinedMember(member.to_string()));
    }
    let (m, n) = (frame.shape.m(), frame.shape.n());
    let q = LaurentScalar::q;
    let qi = || LaurentScalar::q_pow(-1);
    let (k, l) = (member.i, member.j);
    let (alphas, betas) = match member.kind {
        FamilyKind::R => {
            let alphas = (1..=m)
                .map(|s| if frame.rows().contains(&s) { LaurentScalar::one() } else { qi() })
                .collect();
            let c = frame.c_for(k);
            let bl = frame.cols()[l - 1];
            let betas = (1..=n)
                .map(|s| {
                    if s == c {
                        LaurentScalar::q_pow(-2)
                    } else if s == bl {
                        q()
                    } else if frame.cols().contains(&s) {
                        LaurentScalar::one()
                    } else {
                        qi()
                    }
                })
                .collect();
            (alphas, betas)
        }
        FamilyKind::C => {
            let r = frame.r_for(k);
            let al = frame.rows()[l - 1];
            let mut alphas: Vec<LaurentScalar> = (1..=m)
                .map(|s| {
                    if s == r {
                        LaurentScalar::q_pow(-2)
                    } else if s == al && reading == NTorusReading::RowOfGamma {
                        q()
                    } else if frame.rows().contains(&s) {
                        LaurentScalar::one()
                    } else {
                        qi()
                    }
                })
                .collect();
            if reading == NTorusReading::Literal && l <= m {
                alphas[l - 1] = q();
            }
            let betas = (1..=n)
                .map(|s| if frame.cols().contains(&s) { LaurentScalar::one() } else { qi() })
                .collect();
            (alphas, betas)
        }
    };
    Ok(TorusElement::new(alphas, betas).expect("single-term entries"))
}

/// `(m+n+1)t − Σ(a_i + b_i)`, together with `t² + |M|`; the two agree.
pub fn generator_count(frame: &GammaFrame) -> (usize, usize) {
    let t = frame.t();
    let (m, n) = (frame.shape.m(), frame.shape.n());
    let sum: usize = frame.rows().iter().chain(frame.cols()).sum();
    let formula = (m + n + 1) * t - sum;
    (formula, t * t + enumerate_m(frame).len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: usize, n: usize) -> MatrixShape {
        MatrixShape::new(m, n).unwrap()
    }

    fn mi(rows: &[usize], cols: &[usize]) -> MinorIndex {
        MinorIndex::new(rows.to_vec(), cols.to_vec()).unwrap()
    }

    fn frame(m: usize, n: usize, rows: &[usize], cols: &[usize]) -> GammaFrame {
        build_frame(shape(m, n), &mi(rows, cols)).unwrap()
    }

    #[test]
    fn frame_examples() {
        let f = frame(3, 3, &[1, 3], &[1, 2]);
        assert_eq!(f.row_complement(), &[2]);
        assert_eq!(f.col_complement(), &[3]);
        assert_eq!(f.s_generators(), vec![(1, 1), (1, 2), (3, 1), (3, 2)]);
        let f = frame(2, 2, &[1], &[1]);
        assert_eq!((f.row_complement(), f.col_complement()), (&[2][..], &[2][..]));
        let f = frame(2, 2, &[1, 2], &[1, 2]);
        assert!(f.row_complement().is_empty() && f.col_complement().is_empty());
        assert!(enumerate_m(&f).is_empty());
        assert_eq!(
            build_frame(shape(2, 2), &MinorIndex::empty()),
            Err(GammaError::EmptyMinor)
        );
    }

    #[test]
    fn family_examples() {
        let names = |f: &GammaFrame| enumerate_m(f).iter().map(|m| m.to_string()).collect::<Vec<_>>();
        assert_eq!(
            names(&frame(3, 3, &[1, 3], &[1, 2])),
            vec!["m_11=[1,3|2,3]", "m_12=[1,3|1,3]", "n_11=[2,3|1,2]"]
        );
        assert_eq!(names(&frame(2, 2, &[1], &[1])), vec!["m_11=[1|2]", "n_11=[2|1]"]);
        assert_eq!(names(&frame(1, 3, &[1], &[1])), vec!["m_11=[1|3]", "m_21=[1|2]"]);
    }

    #[test]
    fn torus_examples() {
        let f = frame(3, 3, &[1, 3], &[1, 2]);
        let fam = enumerate_m(&f);
        let q = LaurentScalar::q;
        let p = LaurentScalar::q_pow;
        let one = LaurentScalar::one;
        let h = torus_element_for(&f, &fam[0]).unwrap();
        assert_eq!(h.alphas(), &[one(), p(-1), one()]);
        assert_eq!(h.betas(), &[q(), one(), p(-2)]);
        let h = torus_element_for(&f, &fam[2]).unwrap();
        assert_eq!(h.alphas(), &[q(), p(-2), one()]);
        assert_eq!(h.betas(), &[one(), one(), p(-1)]);
        let bogus = FamilyMember {
            value: mi(&[1, 2], &[1, 2]),
            ..fam[0].clone()
        };
        assert!(matches!(
            torus_element_for(&f, &bogus),
            Err(GammaError::UndefinedMember(_))
        ));
    }

    #[test]
    fn generator_count_examples() {
        assert_eq!(generator_count(&frame(3, 3, &[1, 3], &[1, 2])), (7, 7));
        assert_eq!(generator_count(&frame(2, 2, &[1], &[1])), (3, 3));
        assert_eq!(generator_count(&frame(2, 2, &[1, 2], &[1, 2])), (4, 4));
    }

    #[test]
    fn members_sit_above_gamma_and_differ_once() {
        use crate::minors::{enumerate_minors, le_st};
        for (m, n) in [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)] {
            for g in enumerate_minors(shape(m, n)) {
                let f = build_frame(shape(m, n), &g).unwrap();
                for member in enumerate_m(&f) {
                    assert!(le_st(&g, &member.value).unwrap());
                    let rows_diff = g.rows().iter().filter(|r| !member.value.rows().contains(r)).count();
                    let cols_diff = g.cols().iter().filter(|c| !member.value.cols().contains(c)).count();
                    assert_eq!(rows_diff + cols_diff, 1, "{g} vs {member}");
                }
                // definedness closure for the diagonal relation
                let ms: Vec<_> = enumerate_m(&f).into_iter().filter(|x| x.kind == FamilyKind::R).collect();
                for a in &ms {
                    for b in &ms {
                        if a.i < b.i && a.j < b.j {
                            assert!(f.m(a.i, b.j).is_some() && f.m(b.i, a.j).is_some());
                        }
                    }
                }
                let (formula, count) = generator_count(&f);
                assert_eq!(formula, count);
            }
        }
    }
}
