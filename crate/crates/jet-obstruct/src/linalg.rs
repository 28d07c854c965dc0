//! Exact rational linear algebra.
//!
//! Everything downstream (cohomology, jet complexes, spanning sets)
//! reduces to reduced row echelon form over `BigRational`.  The pivoting
//! rule is fixed — leftmost nonzero column, first nonzero row, leading
//! entries normalized to 1 — so every derived basis is deterministic.

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type Vector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Matrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Matrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul_vector(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let lead = self[(row, col)].clone();
            if !lead.is_one() {
                for j in col..self.cols {
                    let v = self[(row, j)].clone() / &lead;
                    self[(row, j)] = v;
                }
            }
            for i in 0..self.rows {
                if i != row && !self[(i, col)].is_zero() {
                    let factor = self[(i, col)].clone();
                    for j in col..self.cols {
                        let v = self[(i, j)].clone() - &factor * &self[(row, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the kernel via free-variable parameterization: one vector
    /// per free column, with 1 in the free slot, 0 in the other free
    /// slots, and pivot entries read off the reduced rows.  Orders by
    /// ascending free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                vec[p] = -m[(i, free)].clone();
            }
            basis.push(vec);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Precomputed echelon data for repeated membership / solve queries
/// against a fixed matrix `A`: stores `R = T·A` with `R` reduced and `T`
/// the recorded row operations.
#[derive(Clone, Debug)]
pub struct Solver {
    reduced: Matrix,
    transform: Matrix,
    pivots: Vec<usize>,
    cols: usize,
}

/// How to fill the free variables of an underdetermined solve.
pub enum FreeChoice<'a> {
    Zeros,
    /// Values for the free columns, consumed in ascending column order.
    Values(&'a mut dyn FnMut() -> Rational),
}

impl Solver {
    pub fn new(a: &Matrix) -> Self {
        let rows = a.rows();
        let mut aug = Matrix::zero(rows, a.cols() + rows);
        for i in 0..rows {
            for j in 0..a.cols() {
                aug[(i, j)] = a[(i, j)].clone();
            }
            aug[(i, a.cols() + i)] = Rational::one();
        }
        // reduce only by the leading block: run rref but stop pivots at cols
        let pivots = rref_prefix(&mut aug, a.cols());
        let mut reduced = Matrix::zero(rows, a.cols());
        let mut transform = Matrix::zero(rows, rows);
        for i in 0..rows {
            for j in 0..a.cols() {
                reduced[(i, j)] = aug[(i, j)].clone();
            }
            for j in 0..rows {
                transform[(i, j)] = aug[(i, a.cols() + j)].clone();
            }
        }
        Solver { reduced, transform, pivots, cols: a.cols() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Solves `A x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[Rational], free: FreeChoice) -> Option<Vector> {
        assert_eq!(b.len(), self.transform.rows());
        let t = self.transform.mul_vector(b);
        // consistency: rows past the rank must vanish
        for (i, v) in t.iter().enumerate() {
            if i >= self.pivots.len() && !v.is_zero() {
                return None;
            }
        }
        let mut x = vec![Rational::zero(); self.cols];
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        match free {
            FreeChoice::Zeros => {}
            FreeChoice::Values(supply) => {
                for j in 0..self.cols {
                    if !is_pivot[j] {
                        x[j] = supply();
                    }
                }
            }
        }
        for (i, &p) in self.pivots.iter().enumerate() {
            let mut v = t[i].clone();
            for j in 0..self.cols {
                if j != p && !is_pivot[j] && !self.reduced[(i, j)].is_zero() && !x[j].is_zero() {
                    v -= &self.reduced[(i, j)] * &x[j];
                }
            }
            x[p] = v;
        }
        Some(x)
    }

    /// Membership of `b` in the column space.
    pub fn consistent(&self, b: &[Rational]) -> bool {
        let t = self.transform.mul_vector(b);
        t.iter().enumerate().all(|(i, v)| i < self.pivots.len() || v.is_zero())
    }
}

/// RREF that only pivots within the first `limit` columns (the rest of
/// the matrix rides along, recording the row operations).
fn rref_prefix(m: &mut Matrix, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..limit {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let lead = m[(row, col)].clone();
        if !lead.is_one() {
            for j in 0..m.cols() {
                let v = m[(row, j)].clone() / &lead;
                m[(row, j)] = v;
            }
        }
        for i in 0..m.rows() {
            if i != row && !m[(i, col)].is_zero() {
                let factor = m[(i, col)].clone();
                for j in 0..m.cols() {
                    let v = m[(i, j)].clone() - &factor * &m[(row, j)];
                    m[(i, j)] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Reduces `rows` to a deterministic echelon basis of their span
/// (nonzero RREF rows of the stacked matrix).
pub fn row_space_basis(cols: usize, rows: &[Vector]) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(cols, rows);
    let pivots = m.rref();
    (0..pivots.len()).map(|i| m.row(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rref_normalizes_and_orders_pivots() {
        let mut m = Matrix::from_rows(3, &[v(&[0, 2, 4]), v(&[1, 1, 1])]);
        let pivots = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.row(0), v(&[1, 0, -1]));
        assert_eq!(m.row(1), v(&[0, 1, 2]));
    }

    #[test]
    fn kernel_of_a_rank_one_map() {
        // x + y + z = 0
        let m = Matrix::from_rows(3, &[v(&[1, 1, 1])]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![v(&[-1, 1, 0]), v(&[-1, 0, 1])]);
        for b in &k {
            assert_eq!(m.mul_vector(b), v(&[0]));
        }
    }

    #[test]
    fn solver_finds_particular_solutions() {
        let a = Matrix::from_columns(2, &[v(&[1, 0]), v(&[1, 1]), v(&[0, 2])]);
        let s = Solver::new(&a);
        assert_eq!(s.rank(), 2);
        let x = s.solve(&v(&[3, 2]), FreeChoice::Zeros).unwrap();
        assert_eq!(a.mul_vector(&x), v(&[3, 2]));
        // free variable (third column is dependent? no: rank 2 of 3 cols, one free)
        let mut supply = || rat(1, 2);
        let x2 = s.solve(&v(&[3, 2]), FreeChoice::Values(&mut supply)).unwrap();
        assert_eq!(a.mul_vector(&x2), v(&[3, 2]));
        assert_ne!(x, x2);
    }

    #[test]
    fn solver_detects_inconsistency() {
        let a = Matrix::from_columns(2, &[v(&[1, 0])]);
        let s = Solver::new(&a);
        assert!(s.solve(&v(&[0, 1]), FreeChoice::Zeros).is_none());
        assert!(!s.consistent(&v(&[0, 1])));
        assert!(s.consistent(&v(&[5, 0])));
    }

    #[test]
    fn row_space_basis_is_canonical() {
        let b = row_space_basis(3, &[v(&[2, 2, 0]), v(&[1, 1, 1]), v(&[3, 3, 1])]);
        assert_eq!(b, vec![v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert!(row_space_basis(3, &[]).is_empty());
        assert!(row_space_basis(3, &[v(&[0, 0, 0])]).is_empty());
    }

    #[test]
    fn zero_column_matrices() {
        let a = Matrix::zero(3, 0);
        let s = Solver::new(&a);
        assert_eq!(s.rank(), 0);
        assert!(s.solve(&v(&[0, 0, 0]), FreeChoice::Zeros).is_some());
        assert!(s.solve(&v(&[1, 0, 0]), FreeChoice::Zeros).is_none());
        assert!(a.kernel_basis().is_empty());
    }
}
