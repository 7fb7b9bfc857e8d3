use crate::error::{Error, Result};
use crate::ff::FieldSpec;

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|&x| !field.is_valid(x)) {
            return Err(Error::InvalidElement("matrix entry".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.field.check_same(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::Malformed("matrix shapes do not chain".into()));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(dst, self.get(i, k), other.row(k));
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            let pivot_row = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                let x = self.get(i, c);
                if i == r || x == 0 {
                    continue;
                }
                let dst = &mut self.data[i * cols + c..(i + 1) * cols];
                f.axpy(dst, f.neg(x), &pivot_row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, with a 1 in
    /// that column and zeros in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(m.get(r, free));
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_has_trivial_nullspace() {
        let f = make_field(5, 1).unwrap();
        let m = Matrix::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn single_row_over_f2() {
        let f = make_field(2, 1).unwrap();
        let m = Matrix::from_rows(&f, &[vec![1, 1]]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![1, 1]]);
    }

    #[test]
    fn planted_rank_deficiency() {
        let f = make_field(2, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut random = |r: usize, c: usize| {
            let rows: Vec<Vec<u32>> = (0..r)
                .map(|_| (0..c).map(|_| f.random_raw(&mut rng, false)).collect())
                .collect();
            Matrix::from_rows(&f, &rows).unwrap()
        };
        let u = random(40, 35);
        let v = random(35, 36);
        assert_eq!(u.rank(), 35);
        assert_eq!(v.rank(), 35);
        let m = u.mul(&v).unwrap();
        assert_eq!(m.rank(), 35);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        assert!(m.mul_vec(&basis[0]).iter().all(|&x| x == 0));
        assert!(basis[0].iter().any(|&x| x != 0));
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = make_field(3, 1).unwrap();
        assert!(Matrix::from_rows(&f, &[vec![1, 2], vec![1]]).is_err());
    }
}
