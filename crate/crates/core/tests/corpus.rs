//! Whole-corpus checks on the shipped knots, representations and monodromies.

use alexandrite_core::corpus;
use alexandrite_core::knots::KnotPipeline;
use alexandrite_core::mapping_torus::theorem35_report;
use alexandrite_core::numeric::NumericContext;
use alexandrite_core::ruelle::predict_from_knot;

#[test]
fn knot_corpus_exact_checks() {
    let mut ctx = NumericContext::new(128);
    for (k, r, p, rho) in corpus::knot_pairs().unwrap() {
        let kp = KnotPipeline::new(&p, &rho).unwrap();
        let d1 = kp.twisted.d1();
        let d2 = kp.twisted.d2();
        assert!(d1.mul(&d2).unwrap().is_zero(), "{k}/{r}: d1 d2 ≠ 0");
        let ci = kp.column_independence();
        assert!(ci.holds && ci.columns.len() == p.num_generators(), "{k}/{r}: columns");
        assert!(kp.theorem41().unwrap().holds, "{k}/{r}: dual torsion");
        let cor = kp.corollary41(&mut ctx).unwrap();
        if cor.applicable {
            assert_eq!(cor.orders_agree, Some(true), "{k}/{r}");
            assert_eq!(cor.inequality_holds, Some(true), "{k}/{r}");
            // the numeric comparison only exists when all of H^*(X, ρ) vanishes
            let acyclic = cor.all_cohomology_vanishes == Some(true);
            assert_eq!(cor.numeric_agrees, acyclic.then_some(true), "{k}/{r}");
            assert_eq!(cor.dichotomy_consistent(), Some(true), "{k}/{r}");
        }
    }
}

#[test]
fn twisted_dihedral_reps_are_acyclic() {
    let mut ctx = NumericContext::new(128);
    for (k, r) in [("trefoil", "s3_twisted"), ("figure_eight", "d5_twisted"), ("5_1", "d5_twisted"), ("5_2", "d7_twisted")] {
        let kp = KnotPipeline::new(&corpus::knot(k).unwrap(), &corpus::rep(r).unwrap()).unwrap();
        assert_eq!(kp.cohomology_dims_at_one(), [0, 0, 0], "{k}/{r}");
        let report = predict_from_knot(&kp, &mut ctx).unwrap();
        assert_eq!(report.order_e, 0);
        assert_eq!(report.predictions.len(), 2);
        assert_eq!(report.routes_agree, Some(true), "{k}/{r}");
    }
}

#[test]
fn trivial_character_is_not_acyclic() {
    // trivial character: H^0 = H^1 = K, and H^0 ≠ 0 rules out the order bound
    let kp = KnotPipeline::new(&corpus::knot("trefoil").unwrap(), &corpus::rep("trivial").unwrap()).unwrap();
    assert_eq!(kp.cohomology_dims_at_one(), [1, 1, 0]);
    let mut ctx = NumericContext::new(128);
    assert!(!kp.corollary41(&mut ctx).unwrap().applicable);
}

#[test]
fn monodromy_corpus_values() {
    // (name, beta, dim I, charpoly, ord A*, det(F − 1 | I), |τ|)
    let expected = [
        ("identity", 2, 0, "t^2 - 2*t + 1", -2, "1", Some("1e0")),
        ("scalar_two", 0, 1, "t - 2", 0, "1", Some("1e0")),
        ("minus_identity", 0, 2, "t^2 + 2*t + 1", 0, "4", Some("2.5e-1")),
        ("jordan", 1, 1, "t^2 - 2*t + 1", -2, "0", None),
        ("cyclotomic", 1, 2, "t^3 - 1", -1, "3", Some("3.33333333333333333333333333333e-1")),
    ];
    let mut ctx = NumericContext::new(128);
    let corpus = corpus::monodromy().unwrap();
    assert_eq!(corpus.len(), expected.len());
    for ((name, input), (en, beta, i_dim, charpoly, ord, det, tau)) in corpus.iter().zip(expected) {
        assert_eq!(name, en);
        let r = theorem35_report(input, &mut ctx).unwrap();
        assert!(r.applicable, "{name}");
        assert_eq!((r.beta, r.i_dim, r.charpoly.as_str(), r.ord_a_star), (beta, i_dim, charpoly, ord), "{name}");
        assert_eq!(r.det_on_i, det, "{name}");
        assert_eq!(r.torsion_abs.as_deref(), tau, "{name}");
        assert!(r.all_hold(), "{name}");
        assert_eq!(r.strict_inequality, name == "jordan");
        if tau.is_some() {
            assert_eq!(r.limit_agrees, Some(true), "{name}");
            assert_eq!(r.exact_agrees, Some(true), "{name}");
        }
    }
}
