//! Twisted Alexander polynomials against values frozen from `scripts/fox_oracle.py`,
//! an independent sympy implementation of the Fox-calculus pipeline.

use alexandrite_core::corpus;
use alexandrite_core::knots::KnotPipeline;
use alexandrite_core::laurent::unit_equal;
use alexandrite_core::{CycloNumber, LaurentPoly, RatFunc};
use num_rational::BigRational;
use serde::Deserialize;

#[derive(Deserialize)]
struct OracleRow {
    knot: String,
    rep: String,
    order: u32,
    column: usize,
    num: (i64, Vec<Vec<String>>),
    den: (i64, Vec<Vec<String>>),
}

fn oracle() -> Vec<OracleRow> {
    serde_json::from_str(include_str!("data/fox_oracle.json")).expect("oracle json")
}

fn poly(order: u32, (lo, coeffs): &(i64, Vec<Vec<String>>)) -> LaurentPoly {
    let coeffs = coeffs
        .iter()
        .map(|c| CycloNumber::from_coords(order, c.iter().map(|q| q.parse::<BigRational>().unwrap()).collect()))
        .collect();
    LaurentPoly::new(*lo, coeffs)
}

fn ints(num: &[i64], den: &[i64]) -> RatFunc {
    RatFunc::new(LaurentPoly::from_ints(0, num), LaurentPoly::from_ints(0, den)).unwrap()
}

#[test]
fn raw_values_match_oracle() {
    let rows = oracle();
    assert_eq!(rows.len(), 35);
    for row in rows {
        let kp = KnotPipeline::new(&corpus::knot(&row.knot).unwrap(), &corpus::rep(&row.rep).unwrap()).unwrap();
        let delta = kp.twisted_alexander(row.column).unwrap();
        let expected = RatFunc::new(poly(row.order, &row.num), poly(row.order, &row.den)).unwrap();
        assert_eq!(
            delta.value, expected,
            "{} / {} column {}: got {}, oracle {}",
            row.knot, row.rep, row.column, delta.value, expected
        );
    }
}

#[test]
fn classical_canonical_forms() {
    let cases = [
        ("unknot", &[1][..], &[-1, 1][..]),
        ("trefoil", &[1, -1, 1], &[-1, 1]),
        ("figure_eight", &[1, -3, 1], &[-1, 1]),
    ];
    for (knot, num, den) in cases {
        let kp = KnotPipeline::new(&corpus::knot(knot).unwrap(), &corpus::rep("trivial").unwrap()).unwrap();
        let delta = kp.default_alexander().unwrap();
        assert_eq!(delta.canonical, ints(num, den), "{knot}: {}", delta.canonical);
    }
}

#[test]
fn two_dimensional_trivial_rep_squares() {
    for knot in ["unknot", "trefoil", "figure_eight", "5_2"] {
        let p = corpus::knot(knot).unwrap();
        let one = KnotPipeline::new(&p, &corpus::rep("trivial").unwrap()).unwrap().default_alexander().unwrap();
        let two = KnotPipeline::new(&p, &corpus::rep("trivial2").unwrap()).unwrap().default_alexander().unwrap();
        assert!(unit_equal(&two.value, &(&one.value * &one.value)), "{knot}");
    }
}
