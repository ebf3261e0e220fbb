//! Predictions for the Ruelle zeta function at s = 0 and a truncated Euler product.
//!
//! The value at s = 0 is never computed from the product itself. It comes from
//! torsion or Alexander data; the truncated product only serves as a sanity
//! check inside the region of convergence.

use std::io::Read;

use astro_float::BigFloat;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::knots::KnotPipeline;
use crate::laurent::LaurentPoly;
use crate::linalg::{charpoly, MatK, Matrix};
use crate::mapping_torus::{theorem35, MonodromyInput};
use crate::numeric::{BigComplex, NumericContext};
use crate::ring::Ring;
use crate::scalars::CycloNumber;

/// Relative tolerance between the two routes to the leading coefficient.
pub const LEADING_DIGITS: u32 = 18;

fn positive(x: &BigFloat) -> bool {
    x.is_positive() && !x.is_zero() && !x.is_nan()
}

/// Order of R_ρ at s = 0.
pub fn predict_order(h0: usize, h1: usize) -> i64 {
    4 * h0 as i64 - 2 * h1 as i64
}

/// lim |s^{−e} R_ρ(s)| = |τ|².
pub fn predict_leading_from_torsion(abs_torsion: &BigFloat, ctx: &NumericContext) -> Result<BigFloat> {
    if !positive(abs_torsion) {
        return Err(Error::Dimension("the torsion magnitude must be positive".into()));
    }
    Ok(ctx.real_mul(abs_torsion, abs_torsion))
}

/// |R_ρ(0)| = (|δ| · |A*(1)|)².
pub fn predict_r0_from_alexander(delta_abs: &BigFloat, a_at_one_abs: &BigFloat, ctx: &NumericContext) -> Result<BigFloat> {
    if !positive(delta_abs) || !positive(a_at_one_abs) {
        return Err(Error::Dimension("|δ| and |A*(1)| must be positive".into()));
    }
    let x = ctx.real_mul(delta_abs, a_at_one_abs);
    Ok(ctx.real_mul(&x, &x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Squared torsion of the complex at t = 1.
    Torsion,
    /// Difference times the Alexander invariant at 1.
    AlexanderDifference,
    /// Squared limit of (t − 1)^β A*(t).
    AlexanderLimit,
}

#[derive(Clone, Debug, Serialize)]
pub struct RuellePrediction {
    pub order_e: i64,
    pub leading_abs: String,
    pub provenance: Provenance,
}

/// Both routes to the behaviour at s = 0 with their agreement verdict.
#[derive(Clone, Debug, Serialize)]
pub struct RuelleReport {
    pub source: String,
    pub h0: usize,
    pub h1: usize,
    pub order_e: i64,
    pub predictions: Vec<RuellePrediction>,
    /// Relative agreement of the predictions, within 10^-18.
    pub routes_agree: Option<bool>,
    pub note: Option<String>,
}

fn agreement(values: &[BigFloat], ctx: &mut NumericContext) -> Option<bool> {
    if values.len() < 2 {
        return None;
    }
    Some(values.windows(2).all(|w| ctx.agrees(&w[0], &w[1], LEADING_DIGITS)))
}

/// Mapping-torus route: h0 = 0, h1 = β.
pub fn predict_from_monodromy(input: &MonodromyInput, ctx: &mut NumericContext) -> Result<RuelleReport> {
    let (report, values) = theorem35(input, ctx)?;
    let order_e = predict_order(0, report.beta);
    let mut predictions = Vec::new();
    let mut raw = Vec::new();
    if let Some(t) = &values.torsion_abs {
        let v = predict_leading_from_torsion(t, ctx)?;
        predictions.push(RuellePrediction { order_e, leading_abs: ctx.to_decimal(&v, 30), provenance: Provenance::Torsion });
        raw.push(v);
    }
    if let Some(l) = &values.limit {
        let v = ctx.real_mul(l, l);
        predictions.push(RuellePrediction {
            order_e,
            leading_abs: ctx.to_decimal(&v, 30),
            provenance: Provenance::AlexanderLimit,
        });
        raw.push(v);
    }
    let note = (!report.semisimple_at_one)
        .then(|| "the action is not semisimple at 1, so the leading coefficient is not predicted".to_string());
    Ok(RuelleReport {
        source: "mapping-torus".into(),
        h0: 0,
        h1: report.beta,
        order_e,
        routes_agree: agreement(&raw, ctx),
        predictions,
        note,
    })
}

/// Knot route. The leading coefficient is only predicted when every H^i(X, ρ) vanishes.
pub fn predict_from_knot(pipeline: &KnotPipeline, ctx: &mut NumericContext) -> Result<RuelleReport> {
    let dims = pipeline.cohomology_dims_at_one();
    let order_e = predict_order(dims[0], dims[1]);
    let mut predictions = Vec::new();
    let mut raw = Vec::new();
    let mut note = None;
    match pipeline.acyclic_routes(ctx)? {
        Some(routes) => {
            let a = predict_leading_from_torsion(&routes.tau_abs, ctx)?;
            let b = predict_r0_from_alexander(&routes.delta_abs, &routes.a_star_at_one_abs, ctx)?;
            predictions.push(RuellePrediction { order_e, leading_abs: ctx.to_decimal(&a, 30), provenance: Provenance::Torsion });
            predictions.push(RuellePrediction {
                order_e,
                leading_abs: ctx.to_decimal(&b, 30),
                provenance: Provenance::AlexanderDifference,
            });
            raw.push(a);
            raw.push(b);
        }
        None => note = Some("H^*(X, ρ) does not vanish, so only the order is predicted".into()),
    }
    Ok(RuelleReport {
        source: "knot".into(),
        h0: dims[0],
        h1: dims[1],
        order_e,
        routes_agree: agreement(&raw, ctx),
        predictions,
        note,
    })
}

/// Holonomy of a prime geodesic, reduced to its characteristic polynomial det(x − ρ(γ)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Holonomy {
    pub charpoly: LaurentPoly,
}

impl Holonomy {
    pub fn dimension(&self) -> usize {
        self.charpoly.max_exp().unwrap_or(0) as usize
    }

    /// `charpoly:c0|c1|…` (low to high, monic), `matrix:a|b;c|d`, or `scalar:c`.
    pub fn parse(order: u32, text: &str) -> Result<Self> {
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| Error::parse("holonomy", "expected `charpoly:`, `matrix:` or `scalar:`"))?;
        let num = |s: &str| CycloNumber::parse(order, s.trim());
        match kind.trim() {
            "charpoly" => {
                let coeffs = body.split('|').map(num).collect::<Result<Vec<_>>>()?;
                let p = LaurentPoly::new(0, coeffs);
                if p.is_zero() || !p.leading_coeff().is_one() {
                    return Err(Error::parse("holonomy", "characteristic polynomial must be monic"));
                }
                Ok(Holonomy { charpoly: p })
            }
            "matrix" => {
                let rows = body
                    .split(';')
                    .map(|r| r.split('|').map(num).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m: MatK = Matrix::from_rows(rows)?;
                Ok(Holonomy { charpoly: charpoly(&m)? })
            }
            "scalar" => {
                let c = num(body)?;
                Ok(Holonomy { charpoly: LaurentPoly::t_minus(c) })
            }
            other => Err(Error::parse("holonomy", format!("unknown holonomy kind `{other}`"))),
        }
    }

    /// det(1 − ρ u) = u^m · p(1/u), the reversed characteristic polynomial.
    fn factor(&self, u: &BigComplex, ctx: &mut NumericContext) -> BigComplex {
        let m = self.dimension();
        let mut acc = ctx.complex_zero();
        // Σ a_k u^{m−k}, Horner in u over coefficients from high to low degree
        for k in 0..=m {
            let a = ctx.embed(&self.charpoly.coeff(k as i64));
            acc = ctx.add(&ctx.mul(&acc, u), &a);
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub length: BigFloat,
    pub length_text: String,
    pub multiplicity: u32,
    pub holonomy: Holonomy,
}

/// Prime geodesics with lengths in ascending order.
#[derive(Clone, Debug)]
pub struct LengthSpectrum {
    pub order: u32,
    pub entries: Vec<SpectrumEntry>,
}

impl LengthSpectrum {
    /// CSV with header `length,multiplicity,holonomy`; holonomy literals use ζ_order.
    pub fn from_csv(reader: impl Read, order: u32, ctx: &mut NumericContext) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
        let headers = rdr.headers().map_err(|e| Error::parse("header", e.to_string()))?.clone();
        let expected = ["length", "multiplicity", "holonomy"];
        if headers.len() != 3 || headers.iter().zip(expected).any(|(h, e)| h != e) {
            return Err(Error::parse("header", "expected `length,multiplicity,holonomy`"));
        }
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let line = i + 2;
            let rec = rec.map_err(|e| Error::parse(format!("line {line}"), e.to_string()))?;
            let at = |col: &str| format!("line {line}, column {col}");
            let length_text = rec[0].to_string();
            let length = ctx.parse(&length_text).ok_or_else(|| Error::parse(at("length"), "not a number"))?;
            if !positive(&length) {
                return Err(Error::parse(at("length"), "length must be positive"));
            }
            if let Some(prev) = entries.last() {
                if length.cmp(&prev.length).is_some_and(|c| c < 0) {
                    return Err(Error::parse(at("length"), "lengths must be in ascending order"));
                }
            }
            let multiplicity: u32 = rec[1]
                .parse()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| Error::parse(at("multiplicity"), "expected a positive integer"))?;
            let holonomy =
                Holonomy::parse(order, &rec[2]).map_err(|e| Error::parse(at("holonomy"), e.to_string()))?;
            if let Some(first) = entries.first() {
                if first.holonomy.dimension() != holonomy.dimension() {
                    return Err(Error::parse(at("holonomy"), "holonomy dimension differs from the first row"));
                }
            }
            entries.push(SpectrumEntry { length, length_text, multiplicity, holonomy });
        }
        Ok(LengthSpectrum { order, entries })
    }
}

#[derive(Clone, Debug)]
pub struct Truncated {
    pub value: BigComplex,
    pub terms_used: usize,
    /// |factor − 1| for the last included factor.
    pub last_factor_deviation: BigFloat,
    /// `true` when max_length exceeds the largest length in the spectrum.
    pub beyond_coverage: bool,
}

/// Partial Euler product over entries with ℓ ≤ max_length.
pub fn evaluate_truncated(
    spectrum: &LengthSpectrum,
    s: &BigComplex,
    max_length: &BigFloat,
    ctx: &mut NumericContext,
) -> Result<Truncated> {
    let used: Vec<&SpectrumEntry> =
        spectrum.entries.iter().filter(|e| e.length.cmp(max_length).is_some_and(|c| c <= 0)).collect();
    if used.is_empty() {
        return Err(Error::Dimension("no geodesic of length at most the cutoff".into()));
    }
    let mut value = ctx.complex_one();
    let mut deviation = ctx.zero();
    for e in &used {
        let minus_l = ctx.real_sub(&ctx.zero(), &e.length);
        let u = ctx.exp(&ctx.scale(s, &minus_l));
        let f = e.holonomy.factor(&u, ctx);
        let f = ctx.powi(&f, e.multiplicity as u64);
        deviation = ctx.abs(&ctx.sub(&f, &ctx.complex_one()));
        value = ctx.mul(&value, &f);
    }
    let last = &spectrum.entries.last().expect("nonempty").length;
    Ok(Truncated {
        value,
        terms_used: used.len(),
        last_factor_deviation: deviation,
        beyond_coverage: max_length.cmp(last).is_some_and(|c| c > 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(ctx: &mut NumericContext, a: &BigFloat, b: &BigFloat) -> bool {
        ctx.agrees(a, b, 30)
    }

    #[test]
    fn orders() {
        assert_eq!(predict_order(0, 3), -6);
        assert_eq!(predict_order(0, 0), 0);
        assert_eq!(predict_order(1, 3), -2);
    }

    #[test]
    fn leading_values() {
        let mut ctx = NumericContext::new(128);
        let quarter = ctx.parse("0.25").unwrap();
        let v = predict_leading_from_torsion(&quarter, &ctx).unwrap();
        assert_eq!(ctx.to_decimal(&v, 10), "6.25e-2");
        let two = ctx.from_i64(2);
        let third = ctx.real_div(&ctx.one(), &ctx.from_i64(3));
        let v = predict_r0_from_alexander(&two, &third, &ctx).unwrap();
        let expected = ctx.real_div(&ctx.from_i64(4), &ctx.from_i64(9));
        assert!(close(&mut ctx, &v, &expected));
        assert!(predict_leading_from_torsion(&ctx.zero(), &ctx).is_err());
    }

    #[test]
    fn monodromy_routes_agree() {
        let mut ctx = NumericContext::new(128);
        let f = Matrix::diagonal(&[CycloNumber::from_int(-1), CycloNumber::from_int(-1)]);
        let r = predict_from_monodromy(&MonodromyInput::new(f, true).unwrap(), &mut ctx).unwrap();
        assert_eq!(r.order_e, 0);
        assert_eq!(r.routes_agree, Some(true));
        assert_eq!(r.predictions[0].leading_abs, "6.25e-2");
    }

    #[test]
    fn single_factor() {
        let mut ctx = NumericContext::new(128);
        let csv = "length,multiplicity,holonomy\n1,1,scalar:1\n";
        let spec = LengthSpectrum::from_csv(csv.as_bytes(), 1, &mut ctx).unwrap();
        let s = BigComplex { re: ctx.one(), im: ctx.zero() };
        let r = evaluate_truncated(&spec, &s, &ctx.from_i64(5), &mut ctx).unwrap();
        let e1 = ctx.exp(&BigComplex { re: ctx.from_i64(-1), im: ctx.zero() }).re;
        let expected = ctx.real_sub(&ctx.one(), &e1);
        assert!(close(&mut ctx, &r.value.re, &expected));
        assert!(r.value.im.is_zero());
        assert!(r.beyond_coverage);
    }

    #[test]
    fn two_factors() {
        let mut ctx = NumericContext::new(128);
        let csv = "length,multiplicity,holonomy\n1,1,charpoly:1|1\n2,1,matrix:1\n";
        let spec = LengthSpectrum::from_csv(csv.as_bytes(), 1, &mut ctx).unwrap();
        let s = BigComplex { re: ctx.from_i64(2), im: ctx.zero() };
        let r = evaluate_truncated(&spec, &s, &ctx.from_i64(2), &mut ctx).unwrap();
        assert_eq!(r.terms_used, 2);
        let e2 = ctx.exp(&BigComplex { re: ctx.from_i64(-2), im: ctx.zero() }).re;
        let e4 = ctx.real_mul(&e2, &e2);
        let expected = ctx.real_mul(&ctx.one().add(&e2, 256, astro_float::RoundingMode::ToEven), &ctx.real_sub(&ctx.one(), &e4));
        assert!(close(&mut ctx, &r.value.re, &expected));
        assert!(evaluate_truncated(&spec, &s, &ctx.parse("0.5").unwrap(), &mut ctx).is_err());
    }

    #[test]
    fn csv_errors_carry_locations() {
        let mut ctx = NumericContext::new(128);
        let bad = "length,multiplicity,holonomy\n2,1,scalar:1\n1,1,scalar:1\n";
        let err = LengthSpectrum::from_csv(bad.as_bytes(), 1, &mut ctx).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let bad = "length,multiplicity,holonomy\n1,0,scalar:1\n";
        let err = LengthSpectrum::from_csv(bad.as_bytes(), 1, &mut ctx).unwrap_err();
        assert!(err.to_string().contains("multiplicity"), "{err}");
    }
}
