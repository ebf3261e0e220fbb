use super::{MatLambda, Matrix};
use crate::laurent::LaurentPoly;
use crate::ring::{Domain, Ring};

/// Smith normal form over K[t] of a row-shifted Λ-matrix.
///
/// With `S` the input after multiplying row `i` by `t^(-row_shifts[i])`,
/// `u · S · v` is the diagonal matrix of `factors`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    /// Monic invariant factors (zeros last), each dividing the next; length min(rows, cols).
    pub factors: Vec<LaurentPoly>,
    pub row_shifts: Vec<i64>,
    pub u: MatLambda,
    pub v: MatLambda,
}

impl SnfResult {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Nonzero factors that are not units of Λ, with t-powers removed.
    pub fn lambda_factors(&self) -> Vec<LaurentPoly> {
        self.factors
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.strip_t().1)
            .filter(|d| !d.is_unit())
            .collect()
    }

    /// Replays the recorded transforms against `m`.
    pub fn verify(&self, m: &MatLambda) -> bool {
        if self.row_shifts.len() != m.rows() {
            return false;
        }
        let shifted = Matrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).shift(-self.row_shifts[i]));
        let Ok(prod) = self.u.mul(&shifted).and_then(|x| x.mul(&self.v)) else {
            return false;
        };
        let expected = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
            if i == j {
                self.factors[i].clone()
            } else {
                LaurentPoly::zero()
            }
        });
        let chain = self
            .factors
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].exact_div(&w[0]).is_some()));
        prod == expected && chain
    }
}

fn degree(p: &LaurentPoly) -> i64 {
    p.max_exp().unwrap_or(-1)
}

/// Smallest-degree nonzero entry of the trailing submatrix, first in row-major order.
fn min_entry(a: &MatLambda, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            let v = a.get(i, j);
            if !v.is_zero() && best.is_none_or(|(_, _, d)| degree(v) < d) {
                best = Some((i, j, degree(v)));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(m: &MatLambda) -> SnfResult {
    let (mut a, row_shifts) = m.clear_row_shifts();
    let (rows, cols) = a.shape();
    let mut u = MatLambda::identity(rows);
    let mut v = MatLambda::identity(cols);
    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_entry(&a, k) else { break };
            a.swap_rows(k, pi);
            u.swap_rows(k, pi);
            a.swap_cols(k, pj);
            v.swap_cols(k, pj);
            let pivot = a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, k).div_rem(&pivot).expect("nonzero pivot");
                let q = q.neg();
                a.add_row_multiple(i, k, &q);
                u.add_row_multiple(i, k, &q);
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(k, j).div_rem(&pivot).expect("nonzero pivot");
                let q = q.neg();
                a.add_col_multiple(j, k, &q);
                v.add_col_multiple(j, k, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (k + 1..rows)
                .find(|&i| (k + 1..cols).any(|j| a.get(i, j).exact_div(&pivot).is_none()));
            match offender {
                Some(i) => {
                    let one = LaurentPoly::one();
                    a.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        let d = a.get(k, k).clone();
        if d.is_zero() {
            break;
        }
        let inv = LaurentPoly::constant(d.leading_coeff().try_inv().expect("nonzero leading coefficient"));
        a.scale_row(k, &inv);
        u.scale_row(k, &inv);
    }
    let factors = (0..rows.min(cols)).map(|k| a.get(k, k).clone()).collect();
    SnfResult { factors, row_shifts, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_exp, c)
    }

    fn t1() -> LaurentPoly {
        p(0, &[-1, 1])
    }

    #[test]
    fn single_entry() {
        let m = Matrix::from_rows(vec![vec![t1()]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![t1()]);
        assert!(s.verify(&m));
    }

    #[test]
    fn already_diagonal() {
        let sq = &t1() * &t1();
        let m = Matrix::diagonal(&[t1(), sq.clone()]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![t1(), sq]);
        assert!(s.verify(&m));
    }

    #[test]
    fn coprime_entries() {
        let m = Matrix::from_rows(vec![vec![p(1, &[1]), p(0, &[1])], vec![LaurentPoly::zero(), t1()]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![LaurentPoly::one(), p(1, &[-1, 1])]);
        assert!(s.verify(&m));
        assert_eq!(s.lambda_factors(), vec![t1()]);
    }

    #[test]
    fn divisibility_repair_and_rank() {
        // diag(t − 1, t + 1) → (1, t² − 1)
        let m = Matrix::diagonal(&[t1(), p(0, &[1, 1])]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, vec![LaurentPoly::one(), p(0, &[-1, 0, 1])]);
        assert!(s.verify(&m));
        let z = MatLambda::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.rank(), 0);
        assert!(s.verify(&z));
    }

    #[test]
    fn laurent_rows_are_shifted() {
        let m = Matrix::from_rows(vec![vec![p(-2, &[-1, 1]), p(-3, &[4])], vec![p(1, &[2]), p(0, &[1, 1])]]).unwrap();
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        let prod = s.factors.iter().fold(LaurentPoly::one(), |acc, d| &acc * d);
        let det = super::super::det_lambda(&m).unwrap();
        assert!(det.exact_div(&prod).is_some_and(|q| q.is_unit()));
    }
}
