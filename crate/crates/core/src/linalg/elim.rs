use super::{MatK, MatLambda, Matrix};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ring::{Domain, Field, Ring};

/// First nonzero entry of minimal size in column `col`, rows `from..`.
fn pick_pivot<T: Domain>(a: &Matrix<T>, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        let v = a.get(i, col);
        if v.is_zero() {
            continue;
        }
        let s = v.size_hint();
        if best.is_none_or(|(_, bs)| s < bs) {
            best = Some((i, s));
        }
    }
    best.map(|(i, _)| i)
}

fn exact<T: Domain>(num: &T, den: &T) -> Result<T> {
    num.exact_div(den)
        .ok_or_else(|| Error::Internal("fraction-free elimination produced an inexact quotient".into()))
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det<T: Domain>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = pick_pivot(&a, k, k) else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            for j in k + 1..n {
                let v = pivot.mul(a.get(i, j)).sub(&lead.mul(a.get(k, j)));
                a.set(i, j, exact(&v, &prev)?);
            }
            a.set(i, k, T::zero());
        }
        prev = pivot;
    }
    let d = if n == 0 { T::one() } else { a.get(n - 1, n - 1).clone() };
    Ok(if negate { d.neg() } else { d })
}

/// Determinant over Λ: rows are first shifted into K[t], then the shifts are restored.
pub fn det_lambda(m: &MatLambda) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let (shifted, shifts) = m.clear_row_shifts();
    Ok(det(&shifted)?.shift(shifts.iter().sum()))
}

/// Rank and pivot columns from fraction-free row reduction.
///
/// Pivot columns are the lexicographically first maximal independent column
/// set, so they do not depend on the row pivot rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

pub fn echelon<T: Domain>(m: &Matrix<T>) -> Echelon {
    let mut a = m.clone();
    let mut r = 0;
    let mut prev = T::one();
    let mut pivot_cols = Vec::new();
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = pick_pivot(&a, c, r) else { continue };
        a.swap_rows(p, r);
        let pivot = a.get(r, c).clone();
        for i in r + 1..a.rows() {
            let lead = a.get(i, c).clone();
            for j in c + 1..a.cols() {
                let v = pivot.mul(a.get(i, j)).sub(&lead.mul(a.get(r, j)));
                a.set(i, j, v.exact_div(&prev).expect("Bareiss quotients are exact"));
            }
            a.set(i, c, T::zero());
        }
        prev = pivot;
        pivot_cols.push(c);
        r += 1;
    }
    Echelon { rank: r, pivot_cols }
}

pub fn rank<T: Domain>(m: &Matrix<T>) -> usize {
    echelon(m).rank
}

/// Rank and a basis of the right kernel `{v : M v = 0}` over a field.
///
/// Basis vectors are indexed by the free columns in increasing order; vector
/// `k` has a 1 in its free column and 0 in the other free columns.
pub fn kernel<F: Field>(m: &Matrix<F>) -> (usize, Vec<Vec<F>>) {
    let mut a = m.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else { continue };
        a.swap_rows(p, r);
        let inv = a.get(r, c).inv().expect("nonzero pivot is invertible");
        a.scale_row(r, &inv);
        for i in 0..a.rows() {
            if i != r && !a.get(i, c).is_zero() {
                let f = a.get(i, c).neg();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); a.cols()];
            v[f] = F::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = a.get(k, f).neg();
            }
            v
        })
        .collect();
    (r, basis)
}

/// Inverse over a field by Gauss–Jordan elimination.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a = m.hstack(&Matrix::identity(n))?;
    for c in 0..n {
        let p = (c..n).find(|&i| !a.get(i, c).is_zero()).ok_or_else(|| Error::Singular("matrix is not invertible".into()))?;
        a.swap_rows(p, c);
        let inv = a.get(c, c).inv().expect("nonzero pivot is invertible");
        a.scale_row(c, &inv);
        for i in 0..n {
            if i != c && !a.get(i, c).is_zero() {
                let f = a.get(i, c).neg();
                a.add_row_multiple(i, c, &f);
            }
        }
    }
    Ok(a.select_columns(&(n..2 * n).collect::<Vec<_>>()))
}

/// det(t·I − M), monic.
pub fn charpoly(m: &MatK) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let t = LaurentPoly::t();
    let shifted = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let c = LaurentPoly::constant(m.get(i, j).neg());
        if i == j {
            &c + &t
        } else {
            c
        }
    });
    det(&shifted)
}
