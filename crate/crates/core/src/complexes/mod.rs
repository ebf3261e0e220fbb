//! Based bounded complexes of free modules, their homology, Alexander invariants and torsion.
//!
//! Boundary matrices act on column vectors: `∂_i : C_i → C_{i-1}` has shape
//! `rank C_{i-1} × rank C_i`.

mod homology;
pub mod random;
mod report;
mod torsion;

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, PolyJson};
use crate::linalg::{MatK, MatLambda, Matrix};
use crate::ring::Ring;
use crate::scalars::CycloNumber;

pub use homology::{alexander_invariant, homology, Convention, DegreeHomology, HomologyData};
pub use report::{theorem31_report, Theorem31Report};
pub use torsion::{
    difference_delta, reidemeister_torsion, scalar_torsion, specialize_at_one, torsion_parts, DegreeCertificate,
    Difference, Specialization, TorsionCertificate,
};

/// A bounded chain complex of free modules with distinguished bases.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex<T> {
    min_degree: i64,
    ranks: Vec<usize>,
    /// `boundaries[k]` is `∂` out of degree `min_degree + k + 1`.
    boundaries: Vec<Matrix<T>>,
    labels: Vec<Vec<String>>,
    conjugated: bool,
}

/// Based complex over Λ.
pub type BasedComplex = Complex<LaurentPoly>;
/// Based complex over the scalar field K.
pub type ScalarComplex = Complex<CycloNumber>;

fn default_labels(min_degree: i64, ranks: &[usize]) -> Vec<Vec<String>> {
    ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| (0..r).map(|j| format!("c{}_{j}", min_degree + k as i64)).collect())
        .collect()
}

impl<T: Ring> Complex<T> {
    /// Complex concentrated in degrees `min_degree ..= min_degree + ranks.len() - 1`.
    ///
    /// `boundaries` lists `∂` out of each degree above the lowest, in increasing order.
    pub fn new(min_degree: i64, ranks: Vec<usize>, boundaries: Vec<Matrix<T>>) -> Result<Self> {
        let labels = default_labels(min_degree, &ranks);
        Self::with_labels(min_degree, ranks, boundaries, labels)
    }

    pub fn with_labels(
        min_degree: i64,
        ranks: Vec<usize>,
        boundaries: Vec<Matrix<T>>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Dimension("a complex needs at least one degree".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!(
                "{} degrees need {} boundary maps, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::Dimension(format!(
                    "∂ out of degree {} has shape {:?}, expected {:?}",
                    min_degree + k as i64 + 1,
                    b.shape(),
                    (ranks[k], ranks[k + 1])
                )));
            }
        }
        if labels.len() != ranks.len() || labels.iter().zip(&ranks).any(|(l, &r)| l.len() != r) {
            return Err(Error::Dimension("base labels do not match ranks".into()));
        }
        for k in 1..boundaries.len() {
            let composite = boundaries[k - 1].mul(&boundaries[k])?;
            if !composite.is_zero() {
                return Err(Error::NotAComplex { degree: min_degree + k as i64 + 1 });
            }
        }
        Ok(Complex { min_degree, ranks, boundaries, labels, conjugated: false })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    /// Rank of `C_i`, zero outside the support.
    pub fn rank(&self, i: i64) -> usize {
        if self.degrees().contains(&i) {
            self.ranks[(i - self.min_degree) as usize]
        } else {
            0
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `∂_i : C_i → C_{i-1}`; a zero matrix of the right shape outside the stored range.
    pub fn boundary(&self, i: i64) -> Matrix<T> {
        if i > self.min_degree && i <= self.max_degree() {
            self.boundaries[(i - self.min_degree - 1) as usize].clone()
        } else {
            Matrix::zeros(self.rank(i - 1), self.rank(i))
        }
    }

    pub fn boundaries(&self) -> &[Matrix<T>] {
        &self.boundaries
    }

    pub fn labels(&self, i: i64) -> &[String] {
        if self.degrees().contains(&i) {
            &self.labels[(i - self.min_degree) as usize]
        } else {
            &[]
        }
    }

    /// `true` when the complex is a dual, so invariants are conjugated back to the original scalars.
    pub fn is_conjugated(&self) -> bool {
        self.conjugated
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64).sum()
    }

    fn dual_with(&self, conj: impl Fn(&T) -> T) -> Self {
        // D_j = Hom(C_{1-j}); ∂^D_j is the conjugate transpose of ∂^C_{2-j}
        let min_degree = 1 - self.max_degree();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let boundaries = (min_degree + 1..=1 - self.min_degree)
            .map(|j| self.boundary(2 - j).transpose().map(&conj))
            .collect();
        let labels = self
            .labels
            .iter()
            .rev()
            .map(|l| l.iter().map(|s| dual_label(s)).collect())
            .collect();
        Complex { min_degree, ranks, boundaries, labels, conjugated: !self.conjugated }
    }
}

fn dual_label(s: &str) -> String {
    match s.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{s}*"),
    }
}

impl BasedComplex {
    /// The dual complex `Hom_Λ(C, Λ)` with conjugated entries, regraded as a chain complex
    /// by `D_j = C^{1-j}`. Dualizing twice returns the original complex.
    pub fn dualize(&self) -> Self {
        self.dual_with(LaurentPoly::conjugate)
    }

    /// All boundary entries evaluated at t = 1.
    pub fn eval_at_one(&self) -> ScalarComplex {
        Complex {
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(MatLambda::eval_at_one).collect(),
            labels: self.labels.clone(),
            conjugated: self.conjugated,
        }
    }

    /// Direct sum, aligned by degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.conjugated != other.conjugated {
            return Err(Error::Dimension("cannot add a dual complex to a non-dual one".into()));
        }
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let ranks: Vec<usize> = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let boundaries =
            (lo + 1..=hi).map(|i| Matrix::block_diag(&[self.boundary(i), other.boundary(i)])).collect();
        let labels = (lo..=hi)
            .map(|i| {
                let a = self.labels(i).iter().map(|s| format!("a.{s}"));
                let b = other.labels(i).iter().map(|s| format!("b.{s}"));
                a.chain(b).collect()
            })
            .collect();
        let mut out = Complex::with_labels(lo, ranks, boundaries, labels)?;
        out.conjugated = self.conjugated;
        Ok(out)
    }

    /// Change basis in degree `i` by `g ∈ GL(C_i)` with inverse `g_inv`: `∂_i ↦ ∂_i g⁻¹`, `∂_{i+1} ↦ g ∂_{i+1}`.
    pub fn change_basis(&self, i: i64, g: &MatLambda, g_inv: &MatLambda) -> Result<Self> {
        let n = self.rank(i);
        if g.shape() != (n, n) || g_inv.shape() != (n, n) {
            return Err(Error::Dimension(format!("base change in degree {i} must be {n}x{n}")));
        }
        if g.mul(g_inv)? != MatLambda::identity(n) {
            return Err(Error::Dimension("base change and inverse do not multiply to the identity".into()));
        }
        let mut out = self.clone();
        if i > self.min_degree {
            out.boundaries[(i - self.min_degree - 1) as usize] = self.boundary(i).mul(g_inv)?;
        }
        if i < self.max_degree() {
            out.boundaries[(i - self.min_degree) as usize] = g.mul(&self.boundary(i + 1))?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            boundaries: self
                .boundaries
                .iter()
                .enumerate()
                .map(|(k, m)| BoundaryJson {
                    degree: self.min_degree + k as i64 + 1,
                    rows: m.rows(),
                    cols: m.cols(),
                    entries: m.to_rows().iter().map(|r| r.iter().map(LaurentPoly::to_json).collect()).collect(),
                })
                .collect(),
            labels: Some(self.labels.clone()),
            conjugated: self.conjugated,
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let expected = json.ranks.len().saturating_sub(1);
        if json.boundaries.len() != expected {
            return Err(Error::parse(
                "boundaries",
                format!("{} degrees need {expected} boundary maps, found {}", json.ranks.len(), json.boundaries.len()),
            ));
        }
        let mut boundaries = Vec::with_capacity(expected);
        for (k, b) in json.boundaries.iter().enumerate() {
            let want = json.min_degree + k as i64 + 1;
            let loc = format!("boundaries[{k}]");
            if b.degree != want {
                return Err(Error::parse(&loc, format!("expected degree {want}, found {}", b.degree)));
            }
            if b.entries.len() != b.rows || b.entries.iter().any(|r| r.len() != b.cols) {
                return Err(Error::parse(&loc, format!("entries do not form a {}x{} grid", b.rows, b.cols)));
            }
            let rows = b
                .entries
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, p)| {
                            LaurentPoly::from_json(p).map_err(|e| Error::parse(format!("{loc}.entries[{i}][{j}]"), e.to_string()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            boundaries.push(Matrix::new(b.rows, b.cols, rows.into_iter().flatten().collect())?);
        }
        let mut c = match &json.labels {
            Some(l) => Complex::with_labels(json.min_degree, json.ranks.clone(), boundaries, l.clone())?,
            None => Complex::new(json.min_degree, json.ranks.clone(), boundaries)?,
        };
        c.conjugated = json.conjugated;
        Ok(c)
    }
}

impl ScalarComplex {
    /// Promote to a complex over Λ with constant entries.
    pub fn to_lambda(&self) -> BasedComplex {
        Complex {
            min_degree: self.min_degree,
            ranks: self.ranks.clone(),
            boundaries: self.boundaries.iter().map(MatLambda::from_scalars).collect(),
            labels: self.labels.clone(),
            conjugated: self.conjugated,
        }
    }

    pub fn dualize(&self) -> Self {
        self.dual_with(CycloNumber::conjugate)
    }

    pub fn boundary_k(&self, i: i64) -> MatK {
        self.boundary(i)
    }
}

/// Wire form of a based complex over Λ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<BoundaryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub conjugated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryJson {
    pub degree: i64,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<PolyJson>>,
}

/// `0 → Λ →(p)→ Λ → 0` in degrees 1 and 0.
pub fn elementary(p: LaurentPoly) -> BasedComplex {
    let m = Matrix::new(1, 1, vec![p]).expect("1x1");
    Complex::new(0, vec![1, 1], vec![m]).expect("two-term complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_exp, c)
    }

    #[test]
    fn rejects_non_complex() {
        let d2 = Matrix::new(1, 1, vec![p(0, &[1])]).unwrap();
        let d1 = Matrix::new(1, 1, vec![p(0, &[-1, 1])]).unwrap();
        let err = Complex::new(0, vec![1, 1, 1], vec![d1, d2]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex { degree: 2 }));
    }

    #[test]
    fn rejects_bad_shapes() {
        let d1 = Matrix::new(1, 2, vec![p(0, &[1]), p(0, &[1])]).unwrap();
        assert!(Complex::new(0, vec![1, 1], vec![d1]).is_err());
    }

    #[test]
    fn dualize_is_an_involution() {
        let z = CycloNumber::zeta(4);
        let entry = p(0, &[-1, 1]).scale(&z);
        let d2 = Matrix::new(2, 1, vec![entry.clone(), LaurentPoly::zero()]).unwrap();
        let d1 = Matrix::new(1, 2, vec![LaurentPoly::zero(), p(0, &[2, 1])]).unwrap();
        let c = Complex::new(0, vec![1, 2, 1], vec![d1, d2]).unwrap();
        let d = c.dualize();
        assert_eq!(d.degrees(), -1..=1);
        assert!(d.is_conjugated());
        // the entry ζ₄(t − 1) reappears conjugated and transposed
        assert_eq!(d.boundary(0).get(0, 0), &entry.scale(&CycloNumber::from_int(-1)));
        assert_eq!(d.boundary(0).shape(), (1, 2));
        assert_eq!(d.boundary(1).shape(), (2, 1));
        assert_eq!(d.dualize(), c);
    }

    #[test]
    fn json_round_trip() {
        let c = elementary(p(-1, &[3, 0, 1]));
        let json = serde_json::to_string(&c.to_json()).unwrap();
        let back: ComplexJson = serde_json::from_str(&json).unwrap();
        assert_eq!(BasedComplex::from_json(&back).unwrap(), c);
    }

    #[test]
    fn direct_sum_aligns_degrees() {
        let a = elementary(p(0, &[-1, 1]));
        let b = elementary(p(0, &[1])).dualize().dualize();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.ranks(), &[2, 2]);
        assert_eq!(s.euler_characteristic(), 0);
    }
}
