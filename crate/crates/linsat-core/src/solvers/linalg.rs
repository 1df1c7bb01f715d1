//! Gaussian elimination over `F_q`. Arithmetic in a finite field is exact,
//! so pivoting only has to dodge zeros, never instability.

use crate::gf::{FieldElement, FieldSpec};
use std::ops::{Index, IndexMut};

/// Dense row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Matrix {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Matrix-vector product over the field.
    pub fn mul_vec(&self, spec: &FieldSpec, x: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::ZERO;
                for j in 0..self.cols {
                    acc = spec.add(acc, spec.mul(self[(i, j)], x[j]));
                }
                acc
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

/// Classification of `A x = b` after row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<FieldElement>),
    Parametrized(ParametrizedSystem),
    Inconsistent,
}

/// A consistent underdetermined system in reduced row-echelon form; any
/// choice of free-variable values completes to a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametrizedSystem {
    spec: FieldSpec,
    /// RREF of the augmented matrix `[A | b]`.
    rref: Matrix,
    pivot_cols: Vec<usize>,
    free_cols: Vec<usize>,
}

impl ParametrizedSystem {
    pub fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn free_cols(&self) -> &[usize] {
        &self.free_cols
    }

    /// The solution with the given free-variable values (one per entry of
    /// [`Self::free_cols`], in order).
    pub fn instantiate(&self, free_values: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(free_values.len(), self.free_cols.len());
        let n = self.rref.cols - 1;
        let mut x = vec![FieldElement::ZERO; n];
        for (col, value) in self.free_cols.iter().zip(free_values) {
            x[*col] = *value;
        }
        for (row, &col) in self.pivot_cols.iter().enumerate() {
            let mut value = self.rref[(row, n)];
            for (&fc, fv) in self.free_cols.iter().zip(free_values) {
                value = self.spec.sub(value, self.spec.mul(self.rref[(row, fc)], *fv));
            }
            x[col] = value;
        }
        x
    }
}

/// Solves `A x = b` by reduction of the augmented matrix to RREF. Works for
/// any shape; the information-set solver uses it on square subsystems.
pub fn solve_linear_system(
    spec: &FieldSpec,
    a: &Matrix,
    b: &[FieldElement],
) -> LinearSolution {
    let (m, n) = a.shape();
    assert_eq!(b.len(), m);
    let mut aug = Matrix::zeros(m, n + 1);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)];
        }
        aug[(i, n)] = b[i];
    }

    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pivot_row) = (row..m).find(|&i| !aug[(i, col)].is_zero()) else {
            continue;
        };
        for j in 0..=n {
            let tmp = aug[(row, j)];
            aug[(row, j)] = aug[(pivot_row, j)];
            aug[(pivot_row, j)] = tmp;
        }
        let inv = spec.inv(aug[(row, col)]).expect("pivot is nonzero");
        for j in col..=n {
            aug[(row, j)] = spec.mul(aug[(row, j)], inv);
        }
        for i in 0..m {
            if i == row || aug[(i, col)].is_zero() {
                continue;
            }
            let factor = aug[(i, col)];
            for j in col..=n {
                let delta = spec.mul(factor, aug[(row, j)]);
                aug[(i, j)] = spec.sub(aug[(i, j)], delta);
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }

    // A zero row with nonzero right-hand side has no solution.
    for i in pivot_cols.len()..m {
        if !aug[(i, n)].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }

    if pivot_cols.len() == n {
        let x = (0..n).map(|i| aug[(i, n)]).collect();
        return LinearSolution::Unique(x);
    }

    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    LinearSolution::Parametrized(ParametrizedSystem {
        spec: spec.clone(),
        rref: aug,
        pivot_cols,
        free_cols,
    })
}
