//! Twisted chain complexes of knot exteriors and twisted Alexander polynomials.

use serde::Serialize;

use crate::complexes::{
    alexander_invariant, difference_delta, homology, reidemeister_torsion, scalar_torsion, theorem31_report,
    BasedComplex, Complex, Convention, Theorem31Report,
};
use crate::error::{Error, Result};
use crate::foxcalc::{fox_derivative, phi, phi_generator_minus_one, Augmentation, Presentation, Representation, ResolvedRep};
use crate::laurent::{leading_at_one, order_at_one, unit_equal, unit_normalize, LaurentPoly, RatFunc, UnitClass};
use crate::linalg::{det_lambda, rank, MatLambda, Matrix};
use crate::numeric::NumericContext;
use crate::ring::Ring;
use crate::scalars::CycloNumber;

/// The complex `0 → Λ^{rm} →∂₂→ Λ^{km} →∂₁→ Λ^m → 0` of a presentation twisted by ρ ⊗ ε.
///
/// Block `(i, j)` of `∂₂` is `Φ(∂r_j/∂x_i)ᵀ` and block `i` of `∂₁` is
/// `Φ(x_i − 1)ᵀ`, so `∂₁∂₂ = 0` is the transpose of the Fox fundamental identity.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub complex: BasedComplex,
    pub generators: usize,
    pub relators: usize,
    pub dimension: usize,
}

impl TwistedComplex {
    pub fn d1(&self) -> MatLambda {
        self.complex.boundary(1)
    }

    pub fn d2(&self) -> MatLambda {
        self.complex.boundary(2)
    }
}

pub fn build_twisted_complex(p: &Presentation, rho: &ResolvedRep, eps: &Augmentation) -> Result<TwistedComplex> {
    let (k, r, m) = (p.num_generators(), p.relators().len(), rho.dimension());
    let d1_blocks: Vec<MatLambda> = (0..k).map(|i| phi_generator_minus_one(i, rho, eps).transpose()).collect();
    let d1 = if k == 0 { MatLambda::zeros(m, 0) } else { Matrix::from_blocks(&[d1_blocks])? };
    let d2 = if r == 0 {
        MatLambda::zeros(k * m, 0)
    } else {
        let grid: Vec<Vec<MatLambda>> = (0..k)
            .map(|i| p.relators().iter().map(|rel| phi(&fox_derivative(rel, i), rho, eps).transpose()).collect())
            .collect();
        Matrix::from_blocks(&grid)?
    };
    let names = p.generators();
    let labels = vec![
        (0..m).map(|a| format!("p⊗v{a}")).collect(),
        (0..k).flat_map(|i| (0..m).map(move |a| format!("{}⊗v{a}", names[i]))).collect(),
        (0..r).flat_map(|j| (0..m).map(move |a| format!("r{}⊗v{a}", j + 1))).collect(),
    ];
    let complex = Complex::with_labels(0, vec![m, k * m, r * m], vec![d1, d2], labels).map_err(|e| match e {
        Error::NotAComplex { .. } => Error::Internal("∂₁∂₂ ≠ 0: the Fox fundamental identity failed".into()),
        other => other,
    })?;
    Ok(TwistedComplex { complex, generators: k, relators: r, dimension: m })
}

/// Kitano's ratio for one deleted column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedAlexander {
    pub column: usize,
    /// det A_j: ∂₂ with block row j removed.
    pub numerator: LaurentPoly,
    /// det Φ(x_j − 1).
    pub denominator: LaurentPoly,
    /// numerator / denominator before normalization.
    pub value: RatFunc,
    pub canonical: RatFunc,
    pub unit: UnitClass,
}

/// A presentation with a validated representation and augmentation, plus its twisted complex.
#[derive(Clone, Debug)]
pub struct KnotPipeline {
    pub presentation: Presentation,
    pub rep: ResolvedRep,
    pub eps: Augmentation,
    pub twisted: TwistedComplex,
}

impl KnotPipeline {
    pub fn new(p: &Presentation, rho: &Representation) -> Result<Self> {
        let eps = p.augmentation()?;
        let rep = rho.validate(p)?;
        let twisted = build_twisted_complex(p, &rep, &eps)?;
        Ok(KnotPipeline { presentation: p.clone(), rep, eps, twisted })
    }

    pub fn complex(&self) -> &BasedComplex {
        &self.twisted.complex
    }

    pub fn dual(&self) -> BasedComplex {
        self.twisted.complex.dualize()
    }

    /// Δ_{K,ρ} with block column `column` (0-based) deleted.
    pub fn twisted_alexander(&self, column: usize) -> Result<TwistedAlexander> {
        let (k, r, m) = (self.twisted.generators, self.twisted.relators, self.twisted.dimension);
        if column >= k {
            return Err(Error::Dimension(format!("column {} out of range 1..={k}", column + 1)));
        }
        if r + 1 != k {
            return Err(Error::Hypothesis(format!(
                "Kitano's formula needs deficiency one, got {k} generators and {r} relators"
            )));
        }
        let denominator = det_lambda(&phi_generator_minus_one(column, &self.rep, &self.eps))?;
        if denominator.is_zero() {
            return Err(Error::Hypothesis(format!(
                "det Φ({} − 1) = 0, so column {} is not admissible",
                self.presentation.generators()[column],
                column + 1
            )));
        }
        let keep: Vec<usize> = (0..k * m).filter(|&row| row / m != column).collect();
        let cols: Vec<usize> = (0..r * m).collect();
        let numerator = det_lambda(&self.twisted.d2().select(&keep, &cols))?;
        if numerator.is_zero() {
            return Err(Error::Hypothesis(format!(
                "det A_{} = 0: the twisted homology is not Λ-torsion",
                column + 1
            )));
        }
        let value = RatFunc::new(numerator.clone(), denominator.clone())?;
        let (canonical, unit) = unit_normalize(&value)?;
        Ok(TwistedAlexander { column, numerator, denominator, value, canonical, unit })
    }

    /// First admissible column.
    pub fn default_alexander(&self) -> Result<TwistedAlexander> {
        let mut last = None;
        for j in 0..self.twisted.generators {
            match self.twisted_alexander(j) {
                Ok(d) => return Ok(d),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Hypothesis("no generators".into())))
    }

    pub fn column_independence(&self) -> ColumnIndependence {
        let mut results = Vec::new();
        let mut skipped = Vec::new();
        for j in 0..self.twisted.generators {
            match self.twisted_alexander(j) {
                Ok(d) => results.push(d),
                Err(e) => skipped.push(ColumnSkip { column: j + 1, reason: e.to_string() }),
            }
        }
        let mut units = Vec::new();
        let mut holds = !results.is_empty();
        if let Some(first) = results.first() {
            for d in &results {
                let q = d.value.try_div(&first.value).expect("nonzero");
                let unit = q.is_unit().then(|| UnitClass { k: q.num().min_exp(), c: q.num().leading_coeff() });
                holds &= unit.is_some();
                units.push(ColumnUnit {
                    column: d.column + 1,
                    canonical: d.canonical.to_string(),
                    unit_relative_to_first: unit.map(|u| format!("{} * t^{}", u.c, u.k)),
                });
            }
        }
        ColumnIndependence { holds, columns: units, skipped }
    }

    /// τ(dual complex) against 1/Δ, exactly up to units.
    pub fn theorem41(&self) -> Result<Theorem41> {
        let delta = self.default_alexander()?;
        let (dual_torsion, _) = reidemeister_torsion(&self.dual())?;
        let inverse = delta.value.try_inv()?;
        Ok(Theorem41 {
            holds: unit_equal(&dual_torsion, &inverse),
            dual_torsion: unit_normalize(&dual_torsion)?.0.to_string(),
            inverse_delta: unit_normalize(&inverse)?.0.to_string(),
        })
    }

    /// dim H^q(X, ρ) for q = 0, 1, 2, from the complex specialized at t = 1.
    pub fn cohomology_dims_at_one(&self) -> [usize; 3] {
        let d = cohomology_dims_at_one(&self.twisted.complex);
        [d[0], d[1], d[2]]
    }

    /// A*(t): the Alexander invariant of the dual complex.
    pub fn alexander_star(&self) -> Result<RatFunc> {
        alexander_invariant(&self.dual(), Convention::Chain)
    }

    pub fn theorem31(&self) -> Theorem31Report {
        theorem31_report(&self.twisted.complex)
    }

    pub fn corollary41(&self, ctx: &mut NumericContext) -> Result<Corollary41Report> {
        match self.default_alexander() {
            Ok(delta) => corollary41_report(&self.twisted.complex, Some(&delta.value), ctx),
            Err(Error::Hypothesis(reason)) => Ok(Corollary41Report::not_applicable(reason)),
            Err(e) => Err(e),
        }
    }

    /// Both routes to |R_ρ(0)| when every H^i(X, ρ) vanishes: |τ*_C|² and (|δ|·|A*(1)|)².
    pub fn acyclic_routes(&self, ctx: &mut NumericContext) -> Result<Option<AcyclicRoutes>> {
        if self.cohomology_dims_at_one().iter().any(|&d| d != 0) {
            return Ok(None);
        }
        let dual = self.dual();
        let tau = scalar_torsion(&dual.eval_at_one())?;
        let tau_abs = ctx.abs_cyclo(&tau);
        let diff = difference_delta(&dual)?;
        let a1 = leading_at_one(&self.alexander_star()?)?;
        let delta_abs = diff.abs(ctx);
        let a1_abs = ctx.abs_cyclo(&a1);
        Ok(Some(AcyclicRoutes { tau_abs, delta_abs, a_star_at_one_abs: a1_abs }))
    }
}

/// Magnitudes for the two acyclic-case formulas.
#[derive(Clone, Debug)]
pub struct AcyclicRoutes {
    pub tau_abs: astro_float::BigFloat,
    pub delta_abs: astro_float::BigFloat,
    pub a_star_at_one_abs: astro_float::BigFloat,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnUnit {
    pub column: usize,
    pub canonical: String,
    pub unit_relative_to_first: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnSkip {
    pub column: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColumnIndependence {
    pub holds: bool,
    pub columns: Vec<ColumnUnit>,
    pub skipped: Vec<ColumnSkip>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem41 {
    pub holds: bool,
    pub dual_torsion: String,
    pub inverse_delta: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Corollary41Report {
    pub applicable: bool,
    pub reason: Option<String>,
    pub ord_delta: Option<i64>,
    pub minus_ord_a_star: Option<i64>,
    pub orders_agree: Option<bool>,
    pub cohomology_dims_at_one: Option<Vec<usize>>,
    pub dim_h1: Option<usize>,
    pub inequality_holds: Option<bool>,
    pub equality: Option<bool>,
    pub semisimple_at_one: Option<bool>,
    pub all_cohomology_vanishes: Option<bool>,
    pub torsion_abs: Option<String>,
    pub inverse_delta_abs: Option<String>,
    pub numeric_agrees: Option<bool>,
}

impl Corollary41Report {
    fn not_applicable(reason: String) -> Self {
        Corollary41Report { applicable: false, reason: Some(reason), ..Default::default() }
    }

    /// Equality holds exactly when the action is semisimple at 1.
    pub fn dichotomy_consistent(&self) -> Option<bool> {
        Some(self.equality? == self.semisimple_at_one?)
    }
}

pub fn twisted_alexander(p: &Presentation, rho: &Representation, column: usize) -> Result<TwistedAlexander> {
    KnotPipeline::new(p, rho)?.twisted_alexander(column)
}

pub fn column_independence_check(p: &Presentation, rho: &Representation) -> Result<ColumnIndependence> {
    Ok(KnotPipeline::new(p, rho)?.column_independence())
}

pub fn theorem41_check(p: &Presentation, rho: &Representation) -> Result<Theorem41> {
    KnotPipeline::new(p, rho)?.theorem41()
}

/// dim H_q(C(1)) over K for every degree of `c`, starting at its minimal degree.
///
/// Over a field this equals the dimension of the cohomology in the same degree.
pub fn cohomology_dims_at_one(c: &BasedComplex) -> Vec<usize> {
    let c1 = c.eval_at_one();
    c1.degrees()
        .map(|q| c1.rank(q) - rank(&c1.boundary(q)) - rank(&c1.boundary(q + 1)))
        .collect()
}

/// Order and semisimplicity report for a chain complex `c` of X_∞ in degrees 0, 1, 2.
///
/// `delta` is the twisted Alexander polynomial in its raw (unnormalized) form.
/// Without it, Δ is taken to be the inverse torsion of the dual complex.
/// Cohomology of X_∞ is read off the dual complex: H^q = H_{−q}(dual).
pub fn corollary41_report(
    c: &BasedComplex,
    delta: Option<&RatFunc>,
    ctx: &mut NumericContext,
) -> Result<Corollary41Report> {
    let dual = c.dualize();
    let h = homology(&dual);
    let h0_dim = h.get(0).and_then(|d| d.dimension());
    if h0_dim != Some(0) {
        let reason = match h0_dim {
            Some(d) => format!("H^0(X_∞, ρ) has dimension {d}, not 0"),
            None => "H^0(X_∞, ρ) is not Λ-torsion".into(),
        };
        return Ok(Corollary41Report::not_applicable(reason));
    }
    let delta = match delta {
        Some(d) => d.clone(),
        None => reidemeister_torsion(&dual)?.0.try_inv()?,
    };
    let a_star = alexander_invariant(&dual, Convention::Chain)?;
    let ord_delta = order_at_one(&delta)?;
    let minus_ord_a_star = -order_at_one(&a_star)?;
    let dims = cohomology_dims_at_one(c);
    let dim_h1 = dims.get(1).copied().unwrap_or(0);
    let semisimple_at_one = h.get(-1).map_or(0, |d| d.max_multiplicity_at_one()) <= 1;
    let all_vanish = dims.iter().all(|&d| d == 0);
    let (torsion_abs, inverse_delta_abs, numeric_agrees) = if all_vanish {
        let tau_abs = ctx.abs_cyclo(&scalar_torsion(&dual.eval_at_one())?);
        let d1_abs = ctx.abs_cyclo(&delta.eval(&CycloNumber::one())?);
        let inv = ctx.real_div(&ctx.one(), &d1_abs);
        let ok = ctx.agrees(&tau_abs, &inv, 20);
        (Some(ctx.to_decimal(&tau_abs, 30)), Some(ctx.to_decimal(&inv, 30)), Some(ok))
    } else {
        (None, None, None)
    };
    Ok(Corollary41Report {
        applicable: true,
        reason: None,
        ord_delta: Some(ord_delta),
        minus_ord_a_star: Some(minus_ord_a_star),
        orders_agree: Some(ord_delta == minus_ord_a_star),
        cohomology_dims_at_one: Some(dims),
        dim_h1: Some(dim_h1),
        inequality_holds: Some(ord_delta >= dim_h1 as i64),
        equality: Some(ord_delta == dim_h1 as i64),
        semisimple_at_one: Some(semisimple_at_one),
        all_cohomology_vanishes: Some(all_vanish),
        torsion_abs,
        inverse_delta_abs,
        numeric_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Presentation {
        Presentation::parse(&["x", "y"], &["x y x y^-1 x^-1 y^-1"]).unwrap()
    }

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(min_exp, c)
    }

    fn ratio(n: LaurentPoly, d: LaurentPoly) -> RatFunc {
        RatFunc::new(n, d).unwrap()
    }

    #[test]
    fn trefoil_trivial_complex() {
        let k = KnotPipeline::new(&trefoil(), &Representation::trivial(1)).unwrap();
        assert_eq!(k.twisted.d1(), Matrix::from_rows(vec![vec![p(0, &[-1, 1]), p(0, &[-1, 1])]]).unwrap());
        assert_eq!(k.twisted.d2().get(0, 0), &p(0, &[1, -1, 1]));
        let d = k.twisted_alexander(0).unwrap();
        assert_eq!(d.canonical, ratio(p(0, &[1, -1, 1]), p(0, &[-1, 1])));
        assert!(k.column_independence().holds);
        assert!(k.theorem41().unwrap().holds);
    }

    #[test]
    fn unknot() {
        let u = Presentation::parse(&["x"], &[]).unwrap();
        let k = KnotPipeline::new(&u, &Representation::trivial(1)).unwrap();
        assert_eq!(k.twisted.d2().shape(), (1, 0));
        let d = k.twisted_alexander(0).unwrap();
        assert_eq!(d.canonical, ratio(LaurentPoly::one(), p(0, &[-1, 1])));
        let t41 = k.theorem41().unwrap();
        assert!(t41.holds);
        assert_eq!(t41.dual_torsion, "t - 1");
    }

    #[test]
    fn corollary_not_applicable_for_trivial_rep() {
        let k = KnotPipeline::new(&trefoil(), &Representation::trivial(1)).unwrap();
        let r = k.corollary41(&mut NumericContext::new(128)).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn non_deficiency_one_is_rejected() {
        let g = Presentation::parse(&["x", "y"], &[]).unwrap().with_augmentation(Augmentation { values: vec![1, 0] });
        let k = KnotPipeline::new(&g.unwrap(), &Representation::trivial(1)).unwrap();
        assert!(matches!(k.twisted_alexander(0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn jordan_type_factor_gives_strict_inequality() {
        let t1sq = p(0, &[1, -2, 1]);
        let d2 = Matrix::from_rows(vec![vec![t1sq], vec![LaurentPoly::zero()]]).unwrap();
        let d1 = Matrix::from_rows(vec![vec![LaurentPoly::zero(), LaurentPoly::one()]]).unwrap();
        let c = Complex::new(0, vec![1, 2, 1], vec![d1, d2]).unwrap();
        let r = corollary41_report(&c, None, &mut NumericContext::new(128)).unwrap();
        assert!(r.applicable);
        assert_eq!((r.ord_delta, r.dim_h1), (Some(2), Some(1)));
        assert_eq!(r.inequality_holds, Some(true));
        assert_eq!(r.equality, Some(false));
        assert_eq!(r.semisimple_at_one, Some(false));
        assert_eq!(r.dichotomy_consistent(), Some(true));
        assert_eq!(r.orders_agree, Some(true));
    }
}
