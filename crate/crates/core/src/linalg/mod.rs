//! Exact dense matrices over Λ, K and K(t).

mod elim;
mod snf;

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::ring::Ring;
use crate::scalars::CycloNumber;

pub use elim::{charpoly, det, det_lambda, echelon, inverse, kernel, rank, Echelon};
pub use snf::{smith_normal_form, SnfResult};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrices over Λ = K[t, t⁻¹].
pub type MatLambda = Matrix<LaurentPoly>;
/// Matrices over the scalar field K.
pub type MatK = Matrix<CycloNumber>;
/// Matrices over K(t).
pub type MatKt = Matrix<RatFunc>;

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Ring>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.sub(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("shape {:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul(c))
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn block_diag(blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Assemble from a grid of equally sized blocks.
    pub fn from_blocks(grid: &[Vec<Self>]) -> Result<Self> {
        let br = grid.len();
        let bc = grid.first().map_or(0, Vec::len);
        if br == 0 || bc == 0 {
            return Ok(Self::zeros(0, 0));
        }
        let (h, w) = grid[0][0].shape();
        if grid.iter().flatten().any(|b| b.shape() != (h, w)) || grid.iter().any(|r| r.len() != bc) {
            return Err(Error::Dimension("blocks must share one shape".into()));
        }
        Ok(Self::from_fn(br * h, bc * w, |i, j| grid[i / h][j / w].get(i % h, j % w).clone()))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += c · row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if !s.is_zero() {
                let v = self.get(target, j).add(&c.mul(s));
                self.set(target, j, v);
            }
        }
    }

    /// col[target] += c · col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if !s.is_zero() {
                let v = self.get(i, target).add(&s.mul(c));
                self.set(i, target, v);
            }
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(c);
            self.set(i, j, v);
        }
    }
}

impl MatLambda {
    /// Evaluate every entry at t = 1.
    pub fn eval_at_one(&self) -> MatK {
        self.map(LaurentPoly::eval_at_one)
    }

    pub fn conjugate(&self) -> Self {
        self.map(LaurentPoly::conjugate)
    }

    pub fn to_ratfunc(&self) -> MatKt {
        self.map(|p| RatFunc::from_poly(p.clone()))
    }

    /// Promote a scalar matrix.
    pub fn from_scalars(m: &MatK) -> Self {
        m.map(|c| LaurentPoly::constant(c.clone()))
    }

    /// Minimum exponent over the nonzero entries of row `i`, or 0 for a zero row.
    pub fn row_min_exp(&self, i: usize) -> i64 {
        self.row(i).iter().filter(|p| !p.is_zero()).map(LaurentPoly::min_exp).min().unwrap_or(0)
    }

    /// Multiply row `i` by t^(−s_i) so every row lands in K[t] with a nonzero constant somewhere.
    pub fn clear_row_shifts(&self) -> (Self, Vec<i64>) {
        let shifts: Vec<i64> = (0..self.rows).map(|i| self.row_min_exp(i)).collect();
        let m = Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).shift(-shifts[i]));
        (m, shifts)
    }
}

impl MatK {
    pub fn conjugate(&self) -> Self {
        self.map(CycloNumber::conjugate)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for row in self.data.chunks(self.cols.max(1)) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}
