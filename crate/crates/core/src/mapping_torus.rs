//! Mapping tori: invariants computed from the monodromy action F = f* on H¹(S, ρ).
//!
//! Under the standing hypothesis H⁰(S, ρ) = 0 the complex of the mapping torus
//! reduces to `F − 1` acting on H¹(S, ρ). Everything here is a function of F.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::foxcalc::toml_error;
use crate::laurent::{leading_at_one, order_at_one, LaurentPoly, RatFunc};
use crate::linalg::{charpoly, det, inverse, kernel, MatK, Matrix};
use crate::numeric::NumericContext;
use crate::ring::Ring;
use crate::scalars::CycloNumber;

/// Relative tolerance for the limit formula, as a power of ten.
pub const LIMIT_DIGITS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyInput {
    pub name: Option<String>,
    pub order: u32,
    pub f: MatK,
    /// The caller asserts H⁰(S, ρ) = 0. Not recomputed.
    pub h0_vanishes: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

impl MonodromyInput {
    pub fn new(f: MatK, h0_vanishes: bool) -> Result<Self> {
        if !f.is_square() {
            return Err(Error::NotSquare { rows: f.rows(), cols: f.cols() });
        }
        let order = f.entries().iter().map(CycloNumber::order).fold(1, num_integer::lcm);
        let f = f.map(|c| c.lift(order));
        Ok(MonodromyInput { name: None, order, f, h0_vanishes })
    }

    /// Keys: `cyclotomic_order` (default 1), `dimension`, `matrix` (rows of literals), `h0_vanishes`.
    pub fn from_toml(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(default = "one")]
            cyclotomic_order: u32,
            dimension: usize,
            matrix: Vec<Vec<Entry>>,
            #[serde(default)]
            h0_vanishes: bool,
            name: Option<String>,
        }
        fn one() -> u32 {
            1
        }
        let raw: Raw = toml::from_str(text).map_err(|e| toml_error(text, &e))?;
        if raw.cyclotomic_order == 0 {
            return Err(Error::parse("cyclotomic_order", "must be positive"));
        }
        if raw.matrix.len() != raw.dimension {
            return Err(Error::parse(
                "matrix",
                format!("expected {} rows, found {}", raw.dimension, raw.matrix.len()),
            ));
        }
        let mut rows = Vec::with_capacity(raw.dimension);
        for (i, row) in raw.matrix.iter().enumerate() {
            if row.len() != raw.dimension {
                return Err(Error::parse(
                    format!("matrix[{i}]"),
                    format!("expected {} entries, found {}", raw.dimension, row.len()),
                ));
            }
            let parsed = row
                .iter()
                .enumerate()
                .map(|(j, e)| match e {
                    Entry::Int(v) => Ok(CycloNumber::from_int(*v).lift(raw.cyclotomic_order)),
                    Entry::Text(s) => CycloNumber::parse(raw.cyclotomic_order, s)
                        .map_err(|err| Error::parse(format!("matrix[{i}][{j}]"), err.to_string())),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        let f = if raw.dimension == 0 { MatK::zeros(0, 0) } else { Matrix::from_rows(rows)? };
        Ok(MonodromyInput { name: raw.name, order: raw.cyclotomic_order, f, h0_vanishes: raw.h0_vanishes })
    }

    pub fn dimension(&self) -> usize {
        self.f.rows()
    }
}

/// I = H¹ / Ker(F − 1) with the map F induces on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientI {
    /// dim Ker(F − 1).
    pub beta: usize,
    pub i_dim: usize,
    /// The induced map in the basis given by the complement columns.
    pub induced: MatK,
    /// Basis change B = [kernel | complement], so B⁻¹ F B is block upper triangular.
    pub basis: MatK,
}

pub fn quotient_i(f: &MatK) -> Result<QuotientI> {
    let n = f.rows();
    if !f.is_square() {
        return Err(Error::NotSquare { rows: n, cols: f.cols() });
    }
    let f_minus_one = f.sub(&MatK::identity(n))?;
    let (_, ker) = kernel(&f_minus_one);
    let beta = ker.len();
    // extend the kernel basis greedily by standard vectors
    let mut cols: Vec<Vec<CycloNumber>> = ker;
    for e in 0..n {
        if cols.len() == n {
            break;
        }
        let mut unit = vec![CycloNumber::zero(); n];
        unit[e] = CycloNumber::one();
        let mut trial = cols.clone();
        trial.push(unit.clone());
        if crate::linalg::rank(&column_matrix(n, &trial)) == trial.len() {
            cols = trial;
        }
    }
    let basis = column_matrix(n, &cols);
    let b_inv = inverse(&basis).map_err(|_| Error::Internal("kernel extension is not a basis".into()))?;
    let conj = b_inv.mul(f)?.mul(&basis)?;
    let rest: Vec<usize> = (beta..n).collect();
    let lower_left = conj.select(&rest, &(0..beta).collect::<Vec<_>>());
    if !lower_left.is_zero() {
        return Err(Error::Internal("Ker(F − 1) is not F-invariant".into()));
    }
    let induced = conj.select(&rest, &rest);
    if det(&induced)?.is_zero() {
        return Err(Error::Internal("the map induced on I is singular".into()));
    }
    Ok(QuotientI { beta, i_dim: n - beta, induced, basis })
}

fn column_matrix(n: usize, cols: &[Vec<CycloNumber>]) -> MatK {
    Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
}

/// Exact torsion data: det((F − 1)|_I), whose inverse is the torsion.
#[derive(Clone, Debug)]
pub struct MonodromyTorsion {
    pub quotient: QuotientI,
    /// det((F − 1)|_I); the empty determinant is 1.
    pub det_on_i: CycloNumber,
    pub semisimple: bool,
}

impl MonodromyTorsion {
    /// |det((F − 1)|_I)|⁻¹, or `None` when the determinant vanishes.
    pub fn abs(&self, ctx: &mut NumericContext) -> Option<astro_float::BigFloat> {
        if self.det_on_i.is_zero() {
            return None;
        }
        let d = ctx.abs_cyclo(&self.det_on_i);
        Some(ctx.real_div(&ctx.one(), &d))
    }
}

pub fn torsion_from_monodromy(f: &MatK) -> Result<MonodromyTorsion> {
    let quotient = quotient_i(f)?;
    let shifted = quotient.induced.sub(&MatK::identity(quotient.i_dim))?;
    let det_on_i = det(&shifted)?;
    Ok(MonodromyTorsion { quotient, det_on_i, semisimple: minimal_polynomial(f)?.is_squarefree() })
}

/// A*(t) = 1 / det(t − F).
pub fn alexander_from_monodromy(f: &MatK) -> Result<RatFunc> {
    RatFunc::new(LaurentPoly::one(), charpoly(f)?)
}

/// A polynomial in K[t] with helpers for multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial(pub LaurentPoly);

impl MinimalPolynomial {
    pub fn is_squarefree(&self) -> bool {
        self.0.gcd(&self.0.derivative()).is_one()
    }

    pub fn multiplicity_at_one(&self) -> usize {
        self.0.root_multiplicity(&CycloNumber::one())
    }
}

/// Minimal polynomial from the first linear dependency among I, F, F², ….
pub fn minimal_polynomial(f: &MatK) -> Result<MinimalPolynomial> {
    let n = f.rows();
    if !f.is_square() {
        return Err(Error::NotSquare { rows: n, cols: f.cols() });
    }
    let mut powers: Vec<Vec<CycloNumber>> = vec![MatK::identity(n).entries().to_vec()];
    let mut current = MatK::identity(n);
    for k in 1..=n {
        current = current.mul(f)?;
        powers.push(current.entries().to_vec());
        let m = Matrix::from_fn(n * n, powers.len(), |i, j| powers[j][i].clone());
        let (_, ker) = kernel(&m);
        if let Some(v) = ker.first() {
            // the dependency has a nonzero top coefficient because lower powers are independent
            let p = LaurentPoly::new(0, v[..=k].to_vec());
            return Ok(MinimalPolynomial(p.monic()));
        }
    }
    if n == 0 {
        return Ok(MinimalPolynomial(LaurentPoly::one()));
    }
    Err(Error::Internal("no dependency among I, F, …, F^n".into()))
}

/// Order dichotomy and limit formula for one monodromy.
#[derive(Clone, Debug, Serialize)]
pub struct Theorem35Report {
    pub applicable: bool,
    pub reason: Option<String>,
    pub dimension: usize,
    pub beta: usize,
    pub i_dim: usize,
    pub charpoly: String,
    pub alexander: String,
    pub ord_a_star: i64,
    pub minus_beta: i64,
    pub order_equality: bool,
    pub strict_inequality: bool,
    pub semisimple_at_one: bool,
    pub globally_semisimple: bool,
    /// Set when F is not semisimple: the torsion value lies outside the theorem's hypothesis.
    pub outside_hypothesis: bool,
    pub det_on_i: String,
    pub torsion_abs: Option<String>,
    /// lim_{t→1} |(t − 1)^β A*(t)|, when the action is semisimple at 1.
    pub limit: Option<String>,
    pub limit_agrees: Option<bool>,
    /// Exact form of the limit check: g(1) = ±det((F − 1)|_I) with charpoly = (t − 1)^β g.
    pub exact_agrees: Option<bool>,
}

impl Theorem35Report {
    /// The dichotomy: equality exactly when semisimple at 1, strict inequality otherwise.
    pub fn dichotomy_holds(&self) -> bool {
        self.order_equality == self.semisimple_at_one && self.strict_inequality != self.semisimple_at_one
    }

    pub fn all_hold(&self) -> bool {
        self.dichotomy_holds() && self.limit_agrees.unwrap_or(true) && self.exact_agrees.unwrap_or(true)
    }
}

/// Magnitudes behind a report, kept at full precision for downstream checks.
#[derive(Clone, Debug)]
pub struct Theorem35Values {
    pub torsion_abs: Option<astro_float::BigFloat>,
    pub limit: Option<astro_float::BigFloat>,
}

pub fn theorem35(input: &MonodromyInput, ctx: &mut NumericContext) -> Result<(Theorem35Report, Theorem35Values)> {
    let f = &input.f;
    let torsion = torsion_from_monodromy(f)?;
    let cp = charpoly(f)?;
    let a_star = alexander_from_monodromy(f)?;
    let ord = order_at_one(&a_star)?;
    let beta = torsion.quotient.beta as i64;
    let minpoly = minimal_polynomial(f)?;
    let semisimple_at_one = minpoly.multiplicity_at_one() <= 1;
    let torsion_abs = torsion.abs(ctx);
    let (limit, limit_agrees, exact_agrees) = if semisimple_at_one && ord == -beta {
        let g1 = leading_at_one(&a_star)?;
        let lim = ctx.abs_cyclo(&g1);
        let agrees = torsion_abs.as_ref().map(|t| ctx.agrees(&lim, t, LIMIT_DIGITS));
        // A* = 1/((t − 1)^β g), so its leading coefficient is 1/g(1)
        let g_at_one = g1.try_inv()?;
        let exact = g_at_one == torsion.det_on_i || g_at_one == torsion.det_on_i.neg();
        (Some(lim), agrees, Some(exact))
    } else {
        (None, None, None)
    };
    let (applicable, reason) = if input.h0_vanishes {
        (true, None)
    } else {
        (false, Some("h0_vanishes is not asserted for this input".to_string()))
    };
    let report = Theorem35Report {
        applicable,
        reason,
        dimension: input.dimension(),
        beta: torsion.quotient.beta,
        i_dim: torsion.quotient.i_dim,
        charpoly: cp.to_string(),
        alexander: a_star.to_string(),
        ord_a_star: ord,
        minus_beta: -beta,
        order_equality: ord == -beta,
        strict_inequality: ord < -beta,
        semisimple_at_one,
        globally_semisimple: torsion.semisimple,
        outside_hypothesis: !torsion.semisimple,
        det_on_i: torsion.det_on_i.to_string(),
        torsion_abs: torsion_abs.as_ref().map(|v| ctx.to_decimal(v, 30)),
        limit: limit.as_ref().map(|v| ctx.to_decimal(v, 30)),
        limit_agrees,
        exact_agrees,
    };
    Ok((report, Theorem35Values { torsion_abs, limit }))
}

pub fn theorem35_report(input: &MonodromyInput, ctx: &mut NumericContext) -> Result<Theorem35Report> {
    Ok(theorem35(input, ctx)?.0)
}

fn random_entry(rng: &mut impl Rng, order: u32) -> CycloNumber {
    let c = CycloNumber::from_int(rng.random_range(-2..=2)).lift(order);
    if order > 1 && rng.random_bool(0.3) {
        &c * &CycloNumber::root_of_unity(order, rng.random_range(0..order as i64))
    } else {
        c
    }
}

/// Unipotent-times-permutation P and its inverse, with small entries.
fn random_conjugator(rng: &mut impl Rng, n: usize, order: u32) -> (MatK, MatK) {
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => CycloNumber::one().lift(order),
        std::cmp::Ordering::Less => random_entry(rng, order),
        _ => CycloNumber::zero().lift(order),
    });
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => CycloNumber::one().lift(order),
        std::cmp::Ordering::Greater => random_entry(rng, order),
        _ => CycloNumber::zero().lift(order),
    });
    let p = lower.mul(&upper).expect("square");
    let p_inv = inverse(&p).expect("unipotent factors are invertible");
    (p, p_inv)
}

fn random_eigenvalue(rng: &mut impl Rng, order: u32) -> CycloNumber {
    match rng.random_range(0..5) {
        0 => CycloNumber::one().lift(order),
        1 => CycloNumber::from_int(-1).lift(order),
        2 if order > 1 => CycloNumber::root_of_unity(order, rng.random_range(1..order as i64)),
        3 => CycloNumber::from_int(rng.random_range(2..=3)).lift(order),
        _ => CycloNumber::from_ratio(1, rng.random_range(2..=3)).lift(order),
    }
}

/// P·D·P⁻¹ with D diagonal. Always semisimple.
pub fn random_semisimple(rng: &mut impl Rng, max_dim: usize, orders: &[u32]) -> MatK {
    let order = orders[rng.random_range(0..orders.len())];
    let n = rng.random_range(1..=max_dim.max(1));
    let d: Vec<CycloNumber> = (0..n).map(|_| random_eigenvalue(rng, order)).collect();
    let (p, p_inv) = random_conjugator(rng, n, order);
    p.mul(&Matrix::diagonal(&d)).and_then(|m| m.mul(&p_inv)).expect("square")
}

/// P·(J₂(1) ⊕ D)·P⁻¹: always has a Jordan block at eigenvalue 1.
pub fn random_jordan(rng: &mut impl Rng, max_dim: usize, orders: &[u32]) -> MatK {
    let order = orders[rng.random_range(0..orders.len())];
    let n = rng.random_range(2..=max_dim.max(2));
    let mut core = MatK::identity(n).map(|c| c.lift(order));
    core.set(0, 1, CycloNumber::one().lift(order));
    for i in 2..n {
        core.set(i, i, random_eigenvalue(rng, order));
    }
    let (p, p_inv) = random_conjugator(rng, n, order);
    p.mul(&core).and_then(|m| m.mul(&p_inv)).expect("square")
}
