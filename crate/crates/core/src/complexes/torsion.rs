use super::{homology, BasedComplex, Complex, ScalarComplex};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::linalg::{det, echelon, Matrix};
use crate::numeric::NumericContext;
use crate::ring::{Domain, Ring};
use crate::scalars::CycloNumber;

/// The square matrix `(b_i ; x_i)` used in one degree.
///
/// Its columns are the chosen boundary columns `∂_{i+1} e_j` for `j` in
/// `boundary_columns`, followed by the standard basis vectors `e_j` of `C_i`
/// for `j` in `lifted_basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCertificate<T> {
    pub degree: i64,
    pub boundary_columns: Vec<usize>,
    pub lifted_basis: Vec<usize>,
    pub matrix: Matrix<T>,
    pub det: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCertificate<T> {
    pub degrees: Vec<DegreeCertificate<T>>,
    pub conjugated: bool,
}

impl<T: Domain> TorsionCertificate<T> {
    fn block(&self, parity: i64) -> Matrix<T> {
        let blocks: Vec<_> =
            self.degrees.iter().filter(|d| d.degree.rem_euclid(2) == parity).map(|d| d.matrix.clone()).collect();
        Matrix::block_diag(&blocks)
    }

    /// Block diagonal of the even-degree matrices.
    pub fn even_matrix(&self) -> Matrix<T> {
        self.block(0)
    }

    /// Block diagonal of the odd-degree matrices.
    pub fn odd_matrix(&self) -> Matrix<T> {
        self.block(1)
    }

    /// Recompute (det even, det odd) from the stored matrices alone.
    pub fn replay(&self) -> Result<(T, T)> {
        Ok((det(&self.even_matrix())?, det(&self.odd_matrix())?))
    }
}

impl TorsionCertificate<LaurentPoly> {
    /// The torsion value the certificate encodes.
    pub fn value(&self) -> Result<RatFunc> {
        let (even, odd) = self.replay()?;
        let v = RatFunc::new(even, odd)?;
        Ok(if self.conjugated { v.conjugate() } else { v })
    }
}

/// Determinants of the even and odd blocks with a certificate.
///
/// In each degree the leftmost independent columns of `∂_i` pick the
/// standard vectors that complete a basis of the boundaries. The ratio
/// `det(even)/det(odd)` does not depend on which basis of the boundaries is
/// chosen, so the value is exact and reproducible.
pub fn torsion_parts<T: Domain>(c: &Complex<T>) -> Result<(T, T, TorsionCertificate<T>)> {
    let pivots: Vec<Vec<usize>> =
        (c.min_degree()..=c.max_degree() + 1).map(|i| echelon(&c.boundary(i)).pivot_cols).collect();
    let mut even = T::one();
    let mut odd = T::one();
    let mut degrees = Vec::new();
    for i in c.degrees() {
        let k = (i - c.min_degree()) as usize;
        let lifted = pivots[k].clone();
        let incoming = pivots[k + 1].clone();
        if lifted.len() + incoming.len() != c.rank(i) {
            return Err(Error::NotAcyclic);
        }
        let n = c.rank(i);
        let b = c.boundary(i + 1).select_columns(&incoming);
        let x = Matrix::<T>::identity(n).select_columns(&lifted);
        let matrix = b.hstack(&x)?;
        let d = det(&matrix)?;
        if d.is_zero() {
            return Err(Error::Internal(format!("torsion block in degree {i} is singular")));
        }
        if i.rem_euclid(2) == 0 {
            even = even.mul(&d);
        } else {
            odd = odd.mul(&d);
        }
        degrees.push(DegreeCertificate { degree: i, boundary_columns: incoming, lifted_basis: lifted, matrix, det: d });
    }
    Ok((even, odd, TorsionCertificate { degrees, conjugated: c.is_conjugated() }))
}

/// Milnor–Reidemeister torsion over K(t) with its certificate.
pub fn reidemeister_torsion(c: &BasedComplex) -> Result<(RatFunc, TorsionCertificate<LaurentPoly>)> {
    let (even, odd, cert) = torsion_parts(c)?;
    let v = RatFunc::new(even, odd)?;
    Ok((if c.is_conjugated() { v.conjugate() } else { v }, cert))
}

/// Torsion of an acyclic complex over K.
pub fn scalar_torsion(c: &ScalarComplex) -> Result<CycloNumber> {
    let (even, odd, _) = torsion_parts(c)?;
    let v = even.try_div(&odd)?;
    Ok(if c.is_conjugated() { v.conjugate() } else { v })
}

/// The unit `c·t^k = τ / A(t)` relating torsion to the Alexander invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub c: CycloNumber,
    pub k: i64,
}

impl Difference {
    pub fn abs(&self, ctx: &mut NumericContext) -> astro_float::BigFloat {
        ctx.abs_cyclo(&self.c)
    }
}

/// τ / A(t), which must be a unit of Λ; anything else is reported as an internal failure.
pub fn difference_delta(c: &BasedComplex) -> Result<Difference> {
    let a = super::alexander_invariant(c, super::Convention::Chain)?;
    let (tau, _) = reidemeister_torsion(c)?;
    let q = tau.try_div(&a)?;
    if !q.is_unit() {
        return Err(Error::Internal(format!("τ/A = {q} is not a unit of Λ")));
    }
    Ok(Difference { c: q.num().leading_coeff(), k: q.num().min_exp() })
}

/// Outcome of specializing a based complex at t = 1.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub complex: ScalarComplex,
    /// Homology is torsion and no invariant factor vanishes at t = 1.
    pub precondition_holds: bool,
    /// Torsion of the specialized complex, when it is acyclic.
    pub torsion_at_one: Option<CycloNumber>,
    /// τ_Λ evaluated at t = 1, when the precondition holds.
    pub lambda_torsion_at_one: Option<CycloNumber>,
}

impl Specialization {
    pub fn acyclic(&self) -> bool {
        self.torsion_at_one.is_some()
    }

    /// `Some(equal)` when both sides exist, `None` when the comparison is skipped.
    pub fn agrees(&self) -> Option<bool> {
        match (&self.torsion_at_one, &self.lambda_torsion_at_one) {
            (Some(a), Some(b)) if self.precondition_holds => Some(a == b),
            _ => None,
        }
    }
}

pub fn specialize_at_one(c: &BasedComplex) -> Result<Specialization> {
    let complex = c.eval_at_one();
    let h = homology(c);
    let precondition_holds = h.is_torsion() && h.avoids_one();
    let torsion_at_one = match scalar_torsion(&complex) {
        Ok(v) => Some(v),
        Err(Error::NotAcyclic) => None,
        Err(e) => return Err(e),
    };
    let lambda_torsion_at_one = if precondition_holds {
        let (tau, _) = reidemeister_torsion(c)?;
        Some(tau.eval(&CycloNumber::one())?)
    } else {
        None
    };
    Ok(Specialization { complex, precondition_holds, torsion_at_one, lambda_torsion_at_one })
}

#[cfg(test)]
mod tests {
    use super::super::{alexander_invariant, elementary, Convention};
    use super::*;
    use crate::laurent::unit_equal;

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_exp, c)
    }

    fn t1() -> LaurentPoly {
        p(0, &[-1, 1])
    }

    #[test]
    fn torsion_examples() {
        let (tau, cert) = reidemeister_torsion(&elementary(t1())).unwrap();
        assert_eq!(tau, RatFunc::from(t1()));
        assert_eq!(cert.value().unwrap(), tau);
        let (tau, _) = reidemeister_torsion(&elementary(LaurentPoly::one())).unwrap();
        assert_eq!(tau, RatFunc::one());
        let sum = elementary(t1()).direct_sum(&elementary(LaurentPoly::one())).unwrap();
        let (tau, cert) = reidemeister_torsion(&sum).unwrap();
        assert!(unit_equal(&tau, &RatFunc::from(t1())));
        assert_eq!(cert.even_matrix().shape(), (2, 2));
        assert_eq!(cert.odd_matrix().shape(), (2, 2));
    }

    #[test]
    fn non_acyclic_is_rejected() {
        let c = Complex::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert!(matches!(reidemeister_torsion(&c), Err(Error::NotAcyclic)));
    }

    #[test]
    fn difference_examples() {
        let d = difference_delta(&elementary(t1())).unwrap();
        assert_eq!(d, Difference { c: 1.into(), k: 0 });
        let d = difference_delta(&elementary(LaurentPoly::one())).unwrap();
        assert_eq!(d.c, CycloNumber::one());
        // rescaling the degree-1 generator by 2 halves τ
        let c = elementary(t1());
        let g = Matrix::new(1, 1, vec![p(0, &[2])]).unwrap();
        let g_inv = Matrix::new(1, 1, vec![LaurentPoly::constant(CycloNumber::from_ratio(1, 2))]).unwrap();
        let scaled = c.change_basis(1, &g, &g_inv).unwrap();
        assert_eq!(difference_delta(&scaled).unwrap().c, CycloNumber::from_ratio(1, 2));
        let scaled = c.change_basis(0, &g, &g_inv).unwrap();
        assert_eq!(difference_delta(&scaled).unwrap().c, CycloNumber::from_int(2));
    }

    #[test]
    fn specialization_examples() {
        let s = specialize_at_one(&elementary(p(0, &[-2, 1]))).unwrap();
        assert!(s.precondition_holds);
        assert_eq!(s.complex.boundary(1).get(0, 0), &CycloNumber::from_int(-1));
        assert_eq!(s.torsion_at_one, Some(CycloNumber::from_int(-1)));
        assert_eq!(s.agrees(), Some(true));

        let s = specialize_at_one(&elementary(t1())).unwrap();
        assert!(!s.precondition_holds);
        assert!(!s.acyclic());
        assert_eq!(s.agrees(), None);

        let s = specialize_at_one(&elementary(LaurentPoly::one())).unwrap();
        assert_eq!(s.torsion_at_one, Some(CycloNumber::one()));
        assert_eq!(s.agrees(), Some(true));
    }

    #[test]
    fn dual_torsion_matches_alexander() {
        let z = CycloNumber::zeta(4);
        let c = elementary(LaurentPoly::t_minus(z)).direct_sum(&elementary(t1())).unwrap();
        let d = c.dualize();
        let (tau, _) = reidemeister_torsion(&d).unwrap();
        let a = alexander_invariant(&d, Convention::Chain).unwrap();
        assert!(unit_equal(&tau, &a));
        assert_eq!(a, alexander_invariant(&c, Convention::Chain).unwrap());
    }
}
