//! Dense exact matrices over [`CycScalar`].

use std::fmt;

use crate::cyclotomic::CycScalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CycScalar;
    fn index(&self, (r, c): (usize, usize)) -> &CycScalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut CycScalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Matrix product over the nonzero entries of both factors.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let sparse_rows: Vec<Vec<(usize, &CycScalar)>> = (0..other.rows)
            .map(|k| {
                (0..other.cols)
                    .filter_map(|c| Some((c, &other[(k, c)])).filter(|(_, b)| !b.is_zero()))
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for (k, row) in sparse_rows.iter().enumerate() {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for &(c, b) in row {
                    let prod = a * b;
                    let slot = &mut out[(r, c)];
                    *slot = &*slot + &prod;
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() {
                    continue;
                }
                for rr in 0..other.rows {
                    for cc in 0..other.cols {
                        let b = &other[(rr, cc)];
                        if !b.is_zero() {
                            out[(r * other.rows + rr, c * other.cols + cc)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycScalar {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> CycScalar {
        assert_eq!((self.rows, self.cols), (other.cols, other.rows));
        let mut acc = CycScalar::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                let b = &other[(j, i)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn rank(&self) -> usize {
        RowEchelon::new(
            self.data.chunks(self.cols.max(1)).map(<[CycScalar]>::to_vec).collect(),
            self.cols,
        )
        .rank()
    }

    /// Solves `self · x = rhs` for a square nonsingular system.
    pub fn solve(&self, rhs: &[CycScalar]) -> Result<Vec<CycScalar>> {
        assert!(self.is_square());
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut aug: Vec<Vec<CycScalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::NotInvertible)?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv()?;
            for x in aug[col].iter_mut() {
                *x = &*x * &inv;
            }
            let prow = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow).skip(col) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
        }
        Ok(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }
}

/// A subspace of `k^n` held as a reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    dim: usize,
    basis: Vec<Vec<CycScalar>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn empty(dim: usize) -> Self {
        RowEchelon {
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn new(vectors: Vec<Vec<CycScalar>>, dim: usize) -> Self {
        let mut e = Self::empty(dim);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<CycScalar>] {
        &self.basis
    }

    fn reduce(&self, mut v: Vec<CycScalar>) -> Vec<CycScalar> {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<CycScalar>) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        // keep the basis fully reduced
        for (b, _) in self.basis.iter_mut().zip(&self.pivots) {
            if b[p].is_zero() {
                continue;
            }
            let f = b[p].clone();
            for (x, y) in b.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        self.basis.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[CycScalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(CycScalar::is_zero)
    }

    pub fn contains_space(&self, other: &RowEchelon) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_space(&self, other: &RowEchelon) -> bool {
        self.rank() == other.rank() && self.contains_space(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycScalar::from_integer(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_solve() {
        let m = int(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(
            m.solve(&[CycScalar::one(), CycScalar::one()]),
            Err(Error::NotInvertible)
        );
        let m = int(&[&[2, 1], &[1, 1]]);
        let x = m
            .solve(&[CycScalar::from_integer(3), CycScalar::from_integer(2)])
            .unwrap();
        assert_eq!(x, vec![CycScalar::one(), CycScalar::one()]);
    }

    #[test]
    fn kron_trace_is_product_of_traces() {
        let a = int(&[&[1, 2], &[3, 4]]);
        let b = int(&[&[0, 1], &[5, -2]]);
        assert_eq!(a.kron(&b).trace(), &a.trace() * &b.trace());
        assert_eq!(a.trace_of_product(&b), a.mul(&b).trace());
    }

    #[test]
    fn echelon_membership() {
        let e = RowEchelon::new(
            vec![vec![1.into(), 1.into(), 0.into()], vec![0.into(), 1.into(), 1.into()]],
            3,
        );
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&[1.into(), 0.into(), (-1).into()]));
        assert!(!e.contains(&[0.into(), 0.into(), 1.into()]));
    }
}
