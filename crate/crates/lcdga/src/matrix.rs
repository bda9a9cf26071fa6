//! Matrices over the noncommutative algebra, path factors and their inverses.

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::nc::NcPoly;
use std::fmt;
use std::ops::Mul;

#[derive(Clone, PartialEq, Eq)]
pub struct NcMatrix {
    rows: usize,
    cols: usize,
    data: Vec<NcPoly>,
}

impl NcMatrix {
    pub fn zeros(rows: usize, cols: usize) -> NcMatrix {
        NcMatrix { rows, cols, data: vec![NcPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> NcMatrix {
        let mut m = NcMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, NcPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NcPoly>>) -> NcMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        NcMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Diagonal matrix of scalars.
    pub fn diagonal(entries: &[Laurent]) -> NcMatrix {
        let n = entries.len();
        let mut m = NcMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, NcPoly::scalar(e.clone()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &NcPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: NcPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NcPoly)> {
        self.data.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.entries().all(|(i, j, p)| if i == j { *p == NcPoly::one() } else { p.is_zero() })
    }

    pub fn map(&self, f: impl Fn(&NcPoly) -> NcPoly) -> NcMatrix {
        NcMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&NcPoly) -> Result<NcPoly>) -> Result<NcMatrix> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(NcMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &NcMatrix) -> NcMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        NcMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn transpose(&self) -> NcMatrix {
        let mut m = NcMatrix::zeros(self.cols, self.rows);
        for (i, j, p) in self.entries() {
            m.set(j, i, p.clone());
        }
        m
    }

    /// Square matrix with `block` placed at rows/cols `at..at+block.rows()`
    /// and the identity elsewhere.
    pub fn embed(block: &NcMatrix, n: usize, at: usize) -> NcMatrix {
        assert!(at + block.rows <= n && block.rows == block.cols);
        let mut m = NcMatrix::identity(n);
        for (i, j, p) in block.entries() {
            m.set(at + i, at + j, p.clone());
        }
        m
    }

    /// Submatrix of rows/cols `at..at+len`.
    pub fn block(&self, at: usize, len: usize) -> NcMatrix {
        let mut m = NcMatrix::zeros(len, len);
        for i in 0..len {
            for j in 0..len {
                m.set(i, j, self.get(at + i, at + j).clone());
            }
        }
        m
    }

    /// Product where the right factor is diagonal with scalar entries.
    pub fn mul_diag_right(&self, d: &[Laurent]) -> NcMatrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            for (j, dj) in d.iter().enumerate() {
                if !dj.is_one() {
                    let v = self.get(i, j).scale(dj);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    pub fn mul_diag_left(&self, d: &[Laurent]) -> NcMatrix {
        let mut m = self.clone();
        for (i, di) in d.iter().enumerate() {
            if !di.is_one() {
                for j in 0..self.cols {
                    let v = self.get(i, j).scale(di);
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Right multiplication by the path factor `P_k(x)` (zero-based `k`),
    /// touching only columns `k, k+1`.
    pub fn mul_path_factor_right(&self, k: usize, x: &NcPoly) -> NcMatrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            let a = self.get(i, k);
            let b = self.get(i, k + 1);
            m.set(i, k, b.clone());
            m.set(i, k + 1, a + &(b * x));
        }
        m
    }

    /// Left multiplication by `P_k(x)`, touching only rows `k, k+1`.
    pub fn mul_path_factor_left(&self, k: usize, x: &NcPoly) -> NcMatrix {
        let mut m = self.clone();
        for j in 0..self.cols {
            let a = self.get(k, j);
            let b = self.get(k + 1, j);
            m.set(k, j, b.clone());
            m.set(k + 1, j, a + &(x * b));
        }
        m
    }

    /// Right multiplication by `P_k(x)^{-1}`.
    pub fn mul_path_factor_inverse_right(&self, k: usize, x: &NcPoly) -> NcMatrix {
        let mut m = self.clone();
        for i in 0..self.rows {
            let a = self.get(i, k);
            let b = self.get(i, k + 1);
            m.set(i, k, b - &(a * x));
            m.set(i, k + 1, a.clone());
        }
        m
    }

    /// Left multiplication by `P_k(x)^{-1}`.
    pub fn mul_path_factor_inverse_left(&self, k: usize, x: &NcPoly) -> NcMatrix {
        let mut m = self.clone();
        for j in 0..self.cols {
            let a = self.get(k, j);
            let b = self.get(k + 1, j);
            m.set(k, j, b - &(x * a));
            m.set(k + 1, j, a.clone());
        }
        m
    }

    pub fn pretty(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = (0..self.cols).map(|j| self.get(i, j).pretty()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Debug for NcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Mul for &NcMatrix {
    type Output = NcMatrix;
    fn mul(self, rhs: &NcMatrix) -> NcMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut m = NcMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + m.get(i, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }
}

impl Mul for NcMatrix {
    type Output = NcMatrix;
    fn mul(self, rhs: NcMatrix) -> NcMatrix {
        &self * &rhs
    }
}

/// `P_k(x)` of size `n`, with `k` one-based as in the braid generator σ_k.
pub fn path_factor(k: usize, x: &NcPoly, n: usize) -> Result<NcMatrix> {
    check_index(k, n)?;
    Ok(NcMatrix::identity(n).mul_path_factor_right(k - 1, x))
}

/// `P_k(x)^{-1}`: identity except the block `[[-x, 1], [1, 0]]`.
pub fn path_factor_inverse(k: usize, x: &NcPoly, n: usize) -> Result<NcMatrix> {
    check_index(k, n)?;
    Ok(NcMatrix::identity(n).mul_path_factor_inverse_right(k - 1, x))
}

fn check_index(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("path factor index {k} for size {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Gen;

    #[test]
    fn path_factor_shape() {
        let a = NcPoly::gen(Gen::new("mx_a"));
        let p = path_factor(1, &a, 2).unwrap();
        assert!(p.get(0, 0).is_zero());
        assert_eq!(*p.get(0, 1), NcPoly::one());
        assert_eq!(*p.get(1, 0), NcPoly::one());
        assert_eq!(*p.get(1, 1), a);
        let q = path_factor_inverse(1, &a, 2).unwrap();
        assert!((&p * &q).is_identity());
        assert!((&q * &p).is_identity());
    }

    #[test]
    fn two_crossings() {
        let a1 = NcPoly::gen(Gen::new("mx_1"));
        let a2 = NcPoly::gen(Gen::new("mx_2"));
        let p = &path_factor(1, &a1, 2).unwrap() * &path_factor(1, &a2, 2).unwrap();
        assert_eq!(*p.get(0, 0), NcPoly::one());
        assert_eq!(*p.get(0, 1), a2);
        assert_eq!(*p.get(1, 0), a1);
        assert_eq!(*p.get(1, 1), &NcPoly::one() + &(&a1 * &a2));
    }

    #[test]
    fn in_place_factor_products_agree() {
        let a = NcPoly::gen(Gen::new("mx_c"));
        let b = NcPoly::gen(Gen::new("mx_d"));
        let m = &path_factor(2, &a, 4).unwrap() * &path_factor(1, &b, 4).unwrap();
        let x = NcPoly::gen(Gen::new("mx_e"));
        assert_eq!(m.mul_path_factor_right(2, &x), &m * &path_factor(3, &x, 4).unwrap());
        assert_eq!(m.mul_path_factor_left(0, &x), &path_factor(1, &x, 4).unwrap() * &m);
        assert_eq!(m.mul_path_factor_inverse_left(1, &x), &path_factor_inverse(2, &x, 4).unwrap() * &m);
    }
}
