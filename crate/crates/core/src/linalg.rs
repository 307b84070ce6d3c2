//! Dense matrices over F_{q^2} with exact row reduction.

use crate::gf::{Elem, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Elem) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> Matrix {
        assert!(k <= self.rows && k <= self.cols);
        let mut out = Matrix::zeros(k, k);
        for r in 0..k {
            out.data[r * k..(r + 1) * k].copy_from_slice(&self.row(r)[..k]);
        }
        out
    }

    /// The submatrix keeping every row and the listed columns.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Elem::ZERO;
                for i in 0..self.cols {
                    acc = field.add(acc, field.mul(self.get(r, i), other.get(i, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != lead {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, lead * self.cols + c);
                }
            }
            let inv = field.inv(self.get(lead, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let x = self.get(lead, c);
                self.set(lead, c, field.mul(x, inv));
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let x = field.sub(self.get(r, c), field.mul(f, self.get(lead, c)));
                    self.set(r, c, x);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().row_reduce(field).len()
    }

    /// A basis of the right kernel `{x : M x = 0}`, one vector per row.
    pub fn kernel(&self, field: &Field) -> Matrix {
        let mut m = self.clone();
        let pivots = m.row_reduce(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, Elem::ONE);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, field.neg(m.get(r, fc)));
            }
        }
        out
    }
}

/// Rank of a matrix given as rows.
pub fn rank(field: &Field, m: &Matrix) -> usize {
    m.rank(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_fields;

    #[test]
    fn rank_of_simple_matrices() {
        let f = make_fields(5).unwrap();
        let e = |n: i64| f.from_int(n);
        assert_eq!(Matrix::zeros(0, 0).rank(&f), 0);
        assert_eq!(Matrix::zeros(3, 4).rank(&f), 0);
        let m = Matrix::from_rows(vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
            vec![e(0), e(1), e(1)],
        ]);
        assert_eq!(m.rank(&f), 2);
        let id = Matrix::from_rows(vec![vec![e(1), e(0)], vec![e(0), e(1)]]);
        assert_eq!(id.rank(&f), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = make_fields(7).unwrap();
        let m = Matrix::from_rows(
            (0..3)
                .map(|r| (0..6).map(|c| f.gen_pow(r * 7 + c * c)).collect())
                .collect(),
        );
        let k = m.kernel(&f);
        assert_eq!(k.rows() + m.rank(&f), m.cols());
        assert!(m.mul(&f, &k.transpose()).is_zero());
        assert_eq!(k.rank(&f), k.rows());
    }
}
