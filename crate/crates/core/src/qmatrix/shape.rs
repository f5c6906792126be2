use std::fmt;

use super::AlgebraError;

/// Dimensions of an `m × n` quantum matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixShape {
    m: usize,
    n: usize,
}

impl MatrixShape {
    pub fn new(m: usize, n: usize) -> Result<Self, AlgebraError> {
        if m == 0 || n == 0 {
            return Err(AlgebraError::EmptyShape);
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.m * self.n
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        (1..=self.m).contains(&i) && (1..=self.n).contains(&j)
    }

    /// Row-major index of `x_ij` (1-based `i`, `j`).
    pub fn generator_index(&self, i: usize, j: usize) -> Result<usize, AlgebraError> {
        if !self.contains(i, j) {
            return Err(AlgebraError::IndexOutOfShape { i, j, shape: *self });
        }
        Ok((i - 1) * self.n + (j - 1))
    }

    /// Inverse of [`generator_index`](Self::generator_index).
    pub fn generator_position(&self, idx: usize) -> (usize, usize) {
        (idx / self.n + 1, idx % self.n + 1)
    }
}

impl fmt::Display for MatrixShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.m, self.n)
    }
}
