//! Dense exact linear algebra over the ground field: reduced row echelon
//! form, solving, and null spaces. Sizes here are desk-scale, so a plain
//! fraction arithmetic Gauss-Jordan is enough.

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot column of each
    /// pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, p * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv().expect("pivot nonzero");
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let factor = self.get(r, col).clone();
                    for c in col..self.cols {
                        let v = self.get(r, c).sub(&factor.mul(self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

/// Solve `A x = b` exactly; None when inconsistent. When the system is
/// underdetermined, free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::zero(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Scalar::zero(); a.cols];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = aug.get(row, a.cols).clone();
    }
    Some(x)
}

/// Basis of the null space of `A`, in reduced form: each vector has a 1 in a
/// distinct free column and zeros in the other free columns.
pub fn null_space(a: &Matrix) -> Vec<Vec<Scalar>> {
    let mut m = a.clone();
    let pivots = m.rref();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; a.cols];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![Scalar::zero(); a.cols];
        vec[free] = Scalar::one();
        for (row, &col) in pivots.iter().enumerate() {
            vec[col] = m.get(row, free).neg();
        }
        basis.push(vec);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn solve_square() {
        let mut a = Matrix::zero(2, 2);
        a.set(0, 0, s(1));
        a.set(0, 1, s(2));
        a.set(1, 0, s(3));
        a.set(1, 1, s(4));
        let x = solve(&a, &[s(5), s(11)]).unwrap();
        assert_eq!(x, vec![s(1), s(2)]);
    }

    #[test]
    fn solve_inconsistent() {
        let mut a = Matrix::zero(2, 1);
        a.set(0, 0, s(1));
        a.set(1, 0, s(1));
        assert!(solve(&a, &[s(1), s(2)]).is_none());
    }

    #[test]
    fn null_space_rank_one() {
        // x + y = 0
        let mut a = Matrix::zero(1, 2);
        a.set(0, 0, s(1));
        a.set(0, 1, s(1));
        let ns = null_space(&a);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![s(-1), s(1)]);
    }

    #[test]
    fn null_space_full_rank_is_empty() {
        let mut a = Matrix::zero(2, 2);
        a.set(0, 0, s(2));
        a.set(1, 1, s(5));
        assert!(null_space(&a).is_empty());
    }
}
