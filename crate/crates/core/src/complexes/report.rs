use serde::Serialize;

use super::{homology, BasedComplex};

/// Dimension checks for cohomology of the infinite cyclic cover.
///
/// `dims[q]` is `dim_K H^q(X_∞)` for `q = 0..=3`, read off the dual complex
/// where `H^q` sits in degree `−q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem31Report {
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub dims: Vec<usize>,
    /// `dim H^q = 0` for every `q ≥ 3`.
    pub vanishing: bool,
    /// `(q, dim H^q == dim H^{2-q})` for `q = 0, 1, 2`.
    pub duality: Vec<(usize, bool)>,
}

impl Theorem31Report {
    fn not_applicable(reason: String) -> Self {
        Theorem31Report { applicable: false, reason: Some(reason), dims: vec![], vanishing: false, duality: vec![] }
    }

    pub fn all_hold(&self) -> bool {
        self.applicable && self.vanishing && self.duality.iter().all(|&(_, ok)| ok)
    }
}

/// `c` is the chain complex of a cell structure of dimension at most 3.
pub fn theorem31_report(c: &BasedComplex) -> Theorem31Report {
    if c.min_degree() < 0 || c.max_degree() > 3 {
        return Theorem31Report::not_applicable(format!(
            "chain complex occupies degrees {}..={}, outside 0..=3",
            c.min_degree(),
            c.max_degree()
        ));
    }
    let h = homology(&c.dualize());
    let mut dims = Vec::with_capacity(4);
    for q in 0..=3i64 {
        match h.get(-q) {
            None => dims.push(0),
            Some(d) => match d.dimension() {
                Some(n) => dims.push(n),
                None => {
                    return Theorem31Report::not_applicable(format!(
                        "H^{q} has free rank {} over Λ, so it is infinite dimensional",
                        d.free_rank
                    ))
                }
            },
        }
    }
    let vanishing = dims[3] == 0;
    let duality = (0..=2).map(|q| (q, dims[q] == dims[2 - q])).collect();
    Theorem31Report { applicable: true, reason: None, dims, vanishing, duality }
}

#[cfg(test)]
mod tests {
    use super::super::{elementary, Complex};
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::linalg::Matrix;
    use crate::ring::Ring;

    #[test]
    fn out_of_range_is_not_applicable() {
        let c = Complex::new(-1, vec![1, 1], vec![Matrix::new(1, 1, vec![LaurentPoly::one()]).unwrap()]).unwrap();
        assert!(!theorem31_report(&c).applicable);
        let c = Complex::new(3, vec![1, 1], vec![Matrix::new(1, 1, vec![LaurentPoly::one()]).unwrap()]).unwrap();
        assert!(!theorem31_report(&c).applicable);
    }

    #[test]
    fn elementary_complex_dimensions() {
        // H_0 = Λ/(t−1) gives H^0 of dimension 1 and nothing in degree 2
        let r = theorem31_report(&elementary(LaurentPoly::from_ints(0, &[-1, 1])));
        assert!(r.applicable);
        assert_eq!(r.dims, vec![1, 0, 0, 0]);
        assert!(r.vanishing);
        assert_eq!(r.duality, vec![(0, false), (1, true), (2, false)]);
    }
}
