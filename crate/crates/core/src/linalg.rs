//! Dense exact linear algebra over the rationals.

use alloc::vec::Vec;

use crate::exactpoly::Scalar;

/// Row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![Scalar::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for (j, v) in r.into_iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        m
    }

    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    /// Pivots are chosen as the first nonzero entry scanning columns left to
    /// right and rows top to bottom.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column (free variable set
    /// to 1, the other free variables to 0).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = alloc::vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            out.push(v);
        }
        out
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Solution set `particular + span(directions)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

/// Solves `A x = b`; `None` when inconsistent. The particular solution sets
/// every free variable to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<AffineSolution> {
    assert_eq!(a.rows, b.len(), "right-hand side length");
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut particular = alloc::vec![Scalar::zero(); a.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug.get(r, a.cols).clone();
    }
    Some(AffineSolution { particular, directions: a.nullspace() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    fn row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| s(x)).collect()
    }

    #[test]
    fn pairing_system_on_a_surface() {
        // rows are pairings of three classes against a basis, last column the target
        let a = Matrix::from_rows(alloc::vec![row(&[57, 27, 18]), row(&[27, 14, 9]), row(&[18, 9, 6])], 3);
        let sol = solve(&a, &row(&[9, 3, 3])).unwrap();
        assert_eq!(sol.particular, row(&[0, -3, 5]));
        assert!(sol.directions.is_empty());
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = Matrix::from_rows(alloc::vec![row(&[1, 1]), row(&[2, 2])], 2);
        assert!(solve(&a, &row(&[1, 3])).is_none());
        let sol = solve(&a, &row(&[1, 2])).unwrap();
        assert_eq!(sol.particular, row(&[1, 0]));
        assert_eq!(sol.directions, alloc::vec![row(&[-1, 1])]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = Matrix::from_rows(alloc::vec![row(&[1, 2, 3, 4]), row(&[2, 4, 7, 9])], 4);
        for v in a.nullspace() {
            assert!(a.mul_vec(&v).iter().all(Scalar::is_zero));
        }
        assert_eq!(a.nullspace().len(), 2);
    }
}
