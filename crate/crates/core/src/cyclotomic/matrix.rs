use std::ops::{Index, IndexMut};

use super::dense::{common_conductor, Dense};
use super::Cyc;
use crate::error::Result;

/// Products with at least this many scalar terms go through [`Dense`].
const DENSE_THRESHOLD: usize = 512;

/// Dense square or rectangular matrix over [`Cyc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyc>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![Cyc::zero(1); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyc::one();
        }
        m
    }

    pub fn diagonal(entries: &[Cyc]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Cyc) -> Self {
        let mut f = f;
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        CycMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyc>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        if self.rows * self.cols * other.cols >= DENSE_THRESHOLD {
            let m = common_conductor([self, other]);
            let fast = Dense::from_matrix(self, m)
                .zip(Dense::from_matrix(other, m))
                .and_then(|(a, b)| a.mul(&b));
            if let Some(d) = fast {
                return d.to_matrix();
            }
        }
        self.mul_generic(other)
    }

    fn mul_generic(&self, other: &CycMatrix) -> CycMatrix {
        let mut out = CycMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] = &out[(i, j)] + &prod;
                    }
                }
            }
        }
        out
    }

    /// `diag(d) · self`.
    pub fn scale_rows(&self, d: &[Cyc]) -> CycMatrix {
        CycMatrix::from_fn(self.rows, self.cols, |i, j| &d[i] * &self[(i, j)])
    }

    /// `self · diag(d)`.
    pub fn scale_cols(&self, d: &[Cyc]) -> CycMatrix {
        CycMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * &d[j])
    }

    pub fn scale(&self, c: &Cyc) -> CycMatrix {
        CycMatrix::from_fn(self.rows, self.cols, |i, j| c * &self[(i, j)])
    }

    pub fn map(&self, f: impl Fn(&Cyc) -> Cyc) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Cyc> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = &self[(i, j)];
                let ok = if i == j { *e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// `Some(κ)` with `self = κ·other`, for nonzero `other`.
    pub fn proportionality(&self, other: &CycMatrix) -> Result<Option<Cyc>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Ok(None);
        }
        let Some(k) = other.data.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        if self.data.len() >= DENSE_THRESHOLD / 8 {
            let m = common_conductor([self, other]);
            if let Some(Some(found)) = Dense::from_matrix(self, m)
                .zip(Dense::from_matrix(other, m))
                .map(|(a, b)| a.proportionality(&b))
            {
                return Ok(found);
            }
        }
        let kappa = self.data[k].checked_div(&other.data[k])?;
        for (a, b) in self.data.iter().zip(&other.data) {
            if *a != &kappa * b {
                return Ok(None);
            }
        }
        Ok(Some(kappa))
    }

    /// First entry where the two matrices differ.
    pub fn first_difference(&self, other: &CycMatrix) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != other[(i, j)])
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = Cyc;
    fn index(&self, (i, j): (usize, usize)) -> &Cyc {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyc {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CycMatrix {
        CycMatrix::from_fn(rows, cols, |_, _| {
            let n = [1u32, 3, 4, 5, 12][rng.gen_range(0..5)];
            let a = Cyc::root(n, rng.gen_range(0..n as i64)).scale(&num_rational::BigRational::new(
                rng.gen_range(-9i64..10).into(),
                rng.gen_range(1i64..4).into(),
            ));
            if rng.gen_bool(0.2) {
                Cyc::zero(1)
            } else {
                a
            }
        })
    }

    #[test]
    fn dense_product_agrees_with_termwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..6 {
            let a = random(&mut rng, 9, 8);
            let b = random(&mut rng, 8, 10);
            assert_eq!(a.mul(&b), a.mul_generic(&b));
            let c = Cyc::root(60, 7);
            assert_eq!(a.scale(&c).proportionality(&a).unwrap(), Some(c.clone()));
            let mut d = a.scale(&c);
            d[(3, 3)] = &d[(3, 3)] + &Cyc::one();
            assert_eq!(d.proportionality(&a).unwrap(), None);
        }
    }
}
