//! Dense exact matrices: products, row reduction, kernels and inverses.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>, // row-major
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = &self[(i, j)];
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add_scaled(&mut self, other: &Matrix, c: &Rational) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `cols` of `self`, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(blocks: &[Matrix]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Self { rows, cols, data }
    }

    /// Reduced row-echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(r, j)] * &factor;
                    self[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of `{x : self x = 0}`, returned as the rows of a matrix in
    /// reduced row-echelon form (leading coefficient 1).
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[(k, f)].clone();
            }
            basis.push(v);
        }
        echelon_rows(basis, self.cols)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Singular(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular(format!("{n}x{n} matrix has rank below {n}")));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.inverse()?.mul_vec(b))
    }
}

/// Row-reduces `rows` and drops zero rows; an echelon basis of their span.
pub fn echelon_rows(rows: Vec<Vec<Rational>>, width: usize) -> Matrix {
    if rows.is_empty() {
        return Matrix::zeros(0, width);
    }
    let mut m = Matrix::from_rows(rows);
    let rank = m.rref_in_place().len();
    let data = m.data[..rank * width].to_vec();
    Matrix {
        rows: rank,
        cols: width,
        data,
    }
}

/// Whether `v` lies in the row span of `basis`.
pub fn in_row_span(basis: &Matrix, v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut stacked = basis.clone();
    stacked.rows += 1;
    stacked.data.extend(v.iter().cloned());
    stacked.rank() == basis.rank()
}

/// Coordinates of `v` in the row basis of an echelon matrix, if it lies in the span.
pub fn row_coordinates(basis: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    let (_, pivots) = basis.rref();
    if pivots.len() != basis.rows() {
        return None;
    }
    // basis is in rref: coordinates are read off at pivot columns
    let coords: Vec<Rational> = pivots.iter().map(|&p| v[p].clone()).collect();
    let mut recon = vec![Rational::zero(); basis.cols()];
    for (k, c) in coords.iter().enumerate() {
        for (j, x) in basis.row(k).iter().enumerate() {
            recon[j] += c * x;
        }
    }
    (recon == v).then_some(coords)
}

/// Coefficients `c` with `sum_k c_k rows[k] = v`, if `v` lies in the span of `rows`.
pub fn solve_in_span(rows: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    let r = rows.len();
    let mut aug = Matrix::zeros(n, r + 1);
    for (k, row) in rows.iter().enumerate() {
        for (i, x) in row.iter().enumerate() {
            aug[(i, k)] = x.clone();
        }
    }
    for (i, x) in v.iter().enumerate() {
        aug[(i, r)] = x.clone();
    }
    let pivots = aug.rref_in_place();
    if pivots.contains(&r) {
        return None;
    }
    let mut c = vec![Rational::zero(); r];
    for (k, &p) in pivots.iter().enumerate() {
        c[p] = aug[(k, r)].clone();
    }
    Some(c)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn kernel_is_echelon() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), &[int(1), int(-1), int(0)]);
        let zero = Matrix::zeros(1, 3).kernel();
        assert_eq!(zero, Matrix::identity(3));
    }

    #[test]
    fn span_membership() {
        let b = echelon_rows(vec![vec![int(2), int(4), int(0)]], 3);
        assert_eq!(b.row(0), &[int(1), int(2), int(0)]);
        assert!(in_row_span(&b, &[frac(1, 2), int(1), int(0)]));
        assert!(!in_row_span(&b, &[int(0), int(0), int(1)]));
        assert_eq!(row_coordinates(&b, &[int(3), int(6), int(0)]), Some(vec![int(3)]));
        assert_eq!(row_coordinates(&b, &[int(0), int(1), int(0)]), None);
    }
}
