use serde::Serialize;

use super::BasedComplex;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::linalg::smith_normal_form;
use crate::ring::Ring;
use crate::scalars::CycloNumber;

/// Homology in one degree: `Λ^free_rank ⊕ ⨁ Λ/(factor)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: i64,
    pub free_rank: usize,
    /// Monic non-unit invariant factors with t-powers removed, each dividing the next.
    pub factors: Vec<LaurentPoly>,
    /// Characteristic polynomial of the t-action on the torsion part.
    pub charpoly: LaurentPoly,
}

impl DegreeHomology {
    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Dimension over K; `None` when there is a free part.
    pub fn dimension(&self) -> Option<usize> {
        self.is_torsion().then(|| self.factors.iter().map(|f| f.max_exp().unwrap_or(0) as usize).sum())
    }

    /// Largest power of (t − 1) dividing a single invariant factor.
    pub fn max_multiplicity_at_one(&self) -> usize {
        self.factors.iter().map(|f| f.root_multiplicity(&CycloNumber::one())).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyData {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyData {
    pub fn get(&self, degree: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == degree)
    }

    pub fn is_torsion(&self) -> bool {
        self.degrees.iter().all(DegreeHomology::is_torsion)
    }

    pub fn first_non_torsion(&self) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| !h.is_torsion())
    }

    /// `true` when no invariant factor in any degree vanishes at t = 1.
    pub fn avoids_one(&self) -> bool {
        self.degrees.iter().all(|h| h.max_multiplicity_at_one() == 0)
    }

    pub fn to_json(&self) -> Vec<DegreeHomologyJson> {
        self.degrees
            .iter()
            .map(|h| DegreeHomologyJson {
                degree: h.degree,
                free_rank: h.free_rank,
                factors: h.factors.iter().map(ToString::to_string).collect(),
                charpoly: h.charpoly.to_string(),
                dimension: h.dimension(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeHomologyJson {
    pub degree: i64,
    pub free_rank: usize,
    pub factors: Vec<String>,
    pub charpoly: String,
    pub dimension: Option<usize>,
}

/// Invariant factors and free ranks of every homology module.
///
/// The torsion of `H_i` comes from the Smith form of `∂_{i+1}`; for a dual
/// complex the factors are conjugated back to the original scalars.
pub fn homology(c: &BasedComplex) -> HomologyData {
    let snfs: Vec<_> = (c.min_degree()..=c.max_degree() + 1).map(|i| smith_normal_form(&c.boundary(i))).collect();
    let degrees = c
        .degrees()
        .map(|i| {
            let k = (i - c.min_degree()) as usize;
            let out_rank = snfs[k].rank();
            let incoming = &snfs[k + 1];
            let mut factors = incoming.lambda_factors();
            if c.is_conjugated() {
                factors = factors.iter().map(LaurentPoly::conjugate).collect();
            }
            let charpoly = factors.iter().fold(LaurentPoly::one(), |acc, f| &acc * f);
            DegreeHomology { degree: i, free_rank: c.rank(i) - out_rank - incoming.rank(), factors, charpoly }
        })
        .collect();
    HomologyData { degrees }
}

/// Chain or cochain reading of the Alexander invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Chain,
    Cochain,
}

/// `Π_i charpoly(t | H_i)^((−1)^i)`, inverted for the cochain convention.
pub fn alexander_invariant(c: &BasedComplex, convention: Convention) -> Result<RatFunc> {
    let h = homology(c);
    if let Some(bad) = h.first_non_torsion() {
        return Err(Error::NotTorsion { degree: bad.degree, free_rank: bad.free_rank });
    }
    let (mut num, mut den) = (LaurentPoly::one(), LaurentPoly::one());
    for d in &h.degrees {
        if d.degree.rem_euclid(2) == 0 {
            num = &num * &d.charpoly;
        } else {
            den = &den * &d.charpoly;
        }
    }
    let chain = RatFunc::new(num, den)?;
    match convention {
        Convention::Chain => Ok(chain),
        Convention::Cochain => chain.try_inv(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{elementary, Complex};
    use super::*;
    use crate::linalg::Matrix;

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_exp, c)
    }

    fn t1() -> LaurentPoly {
        p(0, &[-1, 1])
    }

    #[test]
    fn elementary_homology() {
        let h = homology(&elementary(t1()));
        assert_eq!(h.get(0).unwrap().factors, vec![t1()]);
        assert_eq!(h.get(1).unwrap().factors, vec![]);
        assert!(h.is_torsion());
        let sq = &t1() * &t1();
        let h = homology(&elementary(sq.clone()));
        assert_eq!(h.get(0).unwrap().charpoly, sq);
        assert_eq!(h.get(0).unwrap().max_multiplicity_at_one(), 2);
    }

    #[test]
    fn zero_boundaries_are_free() {
        let c = Complex::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        let h = homology(&c);
        assert_eq!(h.get(0).unwrap().free_rank, 1);
        assert_eq!(h.get(1).unwrap().free_rank, 1);
        assert!(h.get(0).unwrap().factors.is_empty());
        let err = alexander_invariant(&c, Convention::Chain).unwrap_err();
        assert!(matches!(err, Error::NotTorsion { degree: 0, free_rank: 1 }));
    }

    #[test]
    fn alexander_examples() {
        let c = elementary(t1());
        assert_eq!(alexander_invariant(&c, Convention::Chain).unwrap(), RatFunc::from(t1()));
        let inv = RatFunc::new(LaurentPoly::one(), t1()).unwrap();
        assert_eq!(alexander_invariant(&c, Convention::Cochain).unwrap(), inv);
        assert_eq!(alexander_invariant(&elementary(p(3, &[2])), Convention::Chain).unwrap(), RatFunc::one());
        // dual complex, cochain reading
        assert_eq!(alexander_invariant(&c.dualize(), Convention::Cochain).unwrap(), inv);
    }

    #[test]
    fn dual_of_cyclotomic_entry_conjugates_back() {
        let z = CycloNumber::zeta(3);
        let c = elementary(LaurentPoly::t_minus(z));
        let a = alexander_invariant(&c, Convention::Chain).unwrap();
        let d = alexander_invariant(&c.dualize(), Convention::Cochain).unwrap();
        assert_eq!(&a * &d, RatFunc::one());
    }
}
