use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use alexandrite_core::complexes::{
    alexander_invariant, difference_delta, homology, reidemeister_torsion, specialize_at_one, theorem31_report,
    ComplexJson, Convention,
};
use alexandrite_core::foxcalc::{Presentation, Representation};
use alexandrite_core::knots::KnotPipeline;
use alexandrite_core::laurent::{order_at_one, unit_normalize};
use alexandrite_core::mapping_torus::{theorem35_report, MonodromyInput};
use alexandrite_core::numeric::NumericContext;
use alexandrite_core::ruelle::{evaluate_truncated, predict_from_knot, predict_from_monodromy, LengthSpectrum};
use alexandrite_core::verify::{verify_suite, FailureArtifact, Sizes, Suite, VerificationRun, VerifyOptions};
use alexandrite_core::{BasedComplex, Error, ErrorKind, RatFunc};
use serde_json::{json, Value};

use crate::output::{Failure, Report};
use crate::{Command, ComplexSource, Global, RuelleCommand, Source, SuiteArg};

type Outcome = Result<Report, Failure>;

pub fn run(command: Command, global: &Global) -> Outcome {
    let mut ctx = NumericContext::new(global.precision_bits as usize);
    match command {
        Command::TwistedAlexander { presentation, rep, column } => {
            twisted_alexander(&presentation, &rep, column, &mut ctx)
        }
        Command::Torsion { source } => torsion(&source, &mut ctx),
        Command::Homology { source } => homology_cmd(&source),
        Command::MappingTorus { file } => mapping_torus(&file, &mut ctx),
        Command::Ruelle { command: RuelleCommand::Predict { from, files } } => ruelle_predict(from, &files, &mut ctx),
        Command::Ruelle { command: RuelleCommand::Truncate { spectrum, s, max_length, order } } => {
            ruelle_truncate(&spectrum, &s, &max_length, order, &mut ctx)
        }
        Command::Verify { suite, seed, complexes, words, presentations, semisimple, jordan, artifacts } => {
            let opts = VerifyOptions {
                seed,
                suite: match suite {
                    SuiteArg::All => Suite::All,
                    SuiteArg::Complexes => Suite::Complexes,
                    SuiteArg::Fox => Suite::Fox,
                    SuiteArg::Knots => Suite::Knots,
                    SuiteArg::Monodromy => Suite::Monodromy,
                },
                sizes: Sizes {
                    random_complexes: complexes,
                    fox_words: words,
                    random_presentations: presentations,
                    monodromy_semisimple: semisimple,
                    monodromy_jordan: jordan,
                },
                precision_bits: global.precision_bits as usize,
            };
            verify(&opts, &artifacts)
        }
    }
}

// ---------------------------------------------------------------------------
// file ingestion

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source }.into())
}

/// Prefixes a core error with the file it came from, keeping its kind.
fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure { kind: e.kind(), message: format!("{}: {e}", path.display()), report: None }
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    Presentation::from_toml(&read(path)?).map_err(in_file(path))
}

fn load_rep(path: &Path) -> Result<Representation, Failure> {
    Representation::from_toml(&read(path)?).map_err(in_file(path))
}

fn load_pipeline(presentation: &Path, rep: &Path) -> Result<KnotPipeline, Failure> {
    let p = load_presentation(presentation)?;
    let r = load_rep(rep)?;
    KnotPipeline::new(&p, &r).map_err(|e| Failure {
        kind: e.kind(),
        message: format!("{} with {}: {e}", presentation.display(), rep.display()),
        report: None,
    })
}

fn load_complex(source: &ComplexSource) -> Result<BasedComplex, Failure> {
    let c = match (&source.complex, &source.presentation, &source.rep) {
        (Some(path), _, _) => {
            let text = read(path)?;
            let json: ComplexJson = serde_json::from_str(&text).map_err(|e| {
                Failure::input(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
            })?;
            BasedComplex::from_json(&json).map_err(in_file(path))?
        }
        (None, Some(p), Some(r)) => load_pipeline(p, r)?.complex().clone(),
        _ => return Err(Failure::input("give either --complex or both --presentation and --rep")),
    };
    Ok(if source.dual { c.dualize() } else { c })
}

fn load_monodromy(path: &Path) -> Result<MonodromyInput, Failure> {
    MonodromyInput::from_toml(&read(path)?).map_err(in_file(path))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn verdict(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "FAILS",
        None => "not applicable",
    }
}

fn rat_json(f: &RatFunc) -> Value {
    json!({ "text": f.to_string(), "num": to_value(&f.num().to_json()), "den": to_value(&f.den().to_json()) })
}

// ---------------------------------------------------------------------------
// twisted-alexander

fn twisted_alexander(presentation: &Path, rep: &Path, column: Option<usize>, ctx: &mut NumericContext) -> Outcome {
    let kp = load_pipeline(presentation, rep)?;
    let delta = match column {
        Some(0) => return Err(Failure::input("--column is 1-based")),
        Some(j) if j > kp.presentation.num_generators() => {
            return Err(Failure::input(format!(
                "--column {j} exceeds the number of generators ({})",
                kp.presentation.num_generators()
            )))
        }
        Some(j) => kp.twisted_alexander(j - 1),
        None => kp.default_alexander(),
    }?;
    let independence = kp.column_independence();
    let thm41 = kp.theorem41()?;
    let cor = kp.corollary41(ctx)?;
    let pairing = kp.theorem31();
    // With H^0 ≠ 0 the boundary torus contributes and the pairing is not expected.
    let pairing_verdict = (pairing.applicable && pairing.dims.first() == Some(&0)).then(|| pairing.all_hold());
    let ord = order_at_one(&delta.value)?;
    let ranks = kp.complex().ranks().to_vec();
    let generators = kp.presentation.generators();

    let json = json!({
        "command": "twisted-alexander",
        "presentation": {
            "generators": generators,
            "relators": kp.presentation.relators().iter().map(|r| r.display(generators).to_string()).collect::<Vec<_>>(),
        },
        "representation": { "dimension": kp.rep.dimension() },
        "complex_ranks": ranks,
        "column": delta.column + 1,
        "numerator": to_value(&delta.numerator.to_json()),
        "denominator": to_value(&delta.denominator.to_json()),
        "value": rat_json(&delta.value),
        "canonical": rat_json(&delta.canonical),
        "unit": { "c": delta.unit.c.to_string(), "k": delta.unit.k },
        "order_at_one": ord,
        "column_independence": to_value(&independence),
        "dual_torsion": to_value(&thm41),
        "order_bound": to_value(&cor),
        "pairing": to_value(&pairing),
        "pairing_holds": pairing_verdict,
    });

    let mut text = String::new();
    let _ = writeln!(text, "twisted Alexander polynomial (column {}): {}", delta.column + 1, delta.canonical);
    let _ = writeln!(text, "  numerator:   {}", delta.numerator);
    let _ = writeln!(text, "  denominator: {}", delta.denominator);
    let _ = writeln!(text, "  unit:        ({})·t^{}", delta.unit.c, delta.unit.k);
    let _ = writeln!(text, "  order at t = 1: {ord}");
    let _ = writeln!(
        text,
        "column independence: {} ({} admissible, {} skipped)",
        verdict(Some(independence.holds)),
        independence.columns.len(),
        independence.skipped.len()
    );
    let _ = writeln!(text, "dual torsion vs 1/Δ: {}", verdict(Some(thm41.holds)));
    let _ = writeln!(text, "  τ(dual) = {}", thm41.dual_torsion);
    if cor.applicable {
        let _ = writeln!(
            text,
            "order bound: ord Δ = {}, dim H^1 = {}, inequality {}, equality {}, semisimple at 1 {}",
            cor.ord_delta.map_or("-".into(), |v| v.to_string()),
            cor.dim_h1.map_or("-".into(), |v| v.to_string()),
            verdict(cor.inequality_holds),
            cor.equality.map_or("-", |b| if b { "yes" } else { "no" }),
            cor.semisimple_at_one.map_or("-", |b| if b { "yes" } else { "no" }),
        );
        if let (Some(t), Some(d)) = (&cor.torsion_abs, &cor.inverse_delta_abs) {
            let _ = writeln!(text, "  |τ| = {t}, 1/|Δ(1)| = {d}: {}", verdict(cor.numeric_agrees));
        }
    } else {
        let _ = writeln!(text, "order bound: not applicable ({})", cor.reason.as_deref().unwrap_or(""));
    }
    let _ = writeln!(
        text,
        "dim H^q(X_∞): {:?}, pairing {}",
        pairing.dims,
        verdict(pairing_verdict)
    );
    let report = Report::ok(text, json);
    if !independence.holds || !thm41.holds || pairing_verdict == Some(false) || cor.inequality_holds == Some(false) || cor.numeric_agrees == Some(false)
    {
        return Err(Failure::internal("a library invariant failed on this input", report));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// torsion / homology

fn torsion(source: &ComplexSource, ctx: &mut NumericContext) -> Outcome {
    let c = load_complex(source)?;
    let h = homology(&c);
    let (tau, cert) = reidemeister_torsion(&c)?;
    let (canonical, unit) = unit_normalize(&tau)?;
    let ord = order_at_one(&tau)?;
    let chain = h.is_torsion().then(|| alexander_invariant(&c, Convention::Chain)).transpose()?;
    let difference = chain.as_ref().map(|_| difference_delta(&c)).transpose()?;
    let spec = specialize_at_one(&c)?;
    let tau_abs = {
        let v = ctx.abs_cyclo(&unit.c);
        ctx.to_decimal(&v, 30)
    };

    let json = json!({
        "command": "torsion",
        "dual": source.dual,
        "ranks": c.ranks(),
        "min_degree": c.min_degree(),
        "torsion": rat_json(&tau),
        "canonical": rat_json(&canonical),
        "unit": { "c": unit.c.to_string(), "k": unit.k, "abs_c": tau_abs },
        "order_at_one": ord,
        "certificate": {
            "even": cert.even_matrix().to_string(),
            "odd": cert.odd_matrix().to_string(),
        },
        "homology": to_value(&h.to_json()),
        "alexander_invariant": chain.as_ref().map(rat_json),
        "difference": difference.as_ref().map(|d| json!({ "c": d.c.to_string(), "k": d.k })),
        "specialization": {
            "precondition_holds": spec.precondition_holds,
            "acyclic_at_one": spec.acyclic(),
            "torsion_at_one": spec.torsion_at_one.as_ref().map(ToString::to_string),
            "lambda_torsion_at_one": spec.lambda_torsion_at_one.as_ref().map(ToString::to_string),
            "agrees": spec.agrees(),
        },
    });

    let mut text = String::new();
    let _ = writeln!(text, "torsion: {tau}");
    let _ = writeln!(text, "  canonical: {canonical}  (unit ({})·t^{})", unit.c, unit.k);
    let _ = writeln!(text, "  order at t = 1: {ord}");
    match (&chain, &difference) {
        (Some(a), Some(d)) => {
            let _ = writeln!(text, "Alexander invariant: {a}");
            let _ = writeln!(text, "  τ / A = ({})·t^{}", d.c, d.k);
        }
        _ => {
            let _ = writeln!(text, "Alexander invariant: undefined (homology is not torsion)");
        }
    }
    let _ = writeln!(text, "specialization at t = 1: {}", verdict(spec.agrees()));
    let report = Report::ok(text, json);
    if spec.agrees() == Some(false) {
        return Err(Failure::internal("torsion does not commute with specialization", report));
    }
    Ok(report)
}

fn homology_cmd(source: &ComplexSource) -> Outcome {
    let c = load_complex(source)?;
    let h = homology(&c);
    let alexander = |conv| h.is_torsion().then(|| alexander_invariant(&c, conv)).transpose();
    let (chain, cochain) = (alexander(Convention::Chain)?, alexander(Convention::Cochain)?);
    let duality = match (&chain, &cochain) {
        (Some(a), Some(b)) => Some(a.try_div(b).is_ok() && (a * b) == <RatFunc as alexandrite_core::Ring>::one()),
        _ => None,
    };
    let pairing = theorem31_report(&c);
    let pairing_verdict = (pairing.applicable && pairing.dims.first() == Some(&0)).then(|| pairing.all_hold());
    let json = json!({
        "command": "homology",
        "dual": source.dual,
        "ranks": c.ranks(),
        "min_degree": c.min_degree(),
        "euler_characteristic": c.euler_characteristic(),
        "homology": to_value(&h.to_json()),
        "torsion_homology": h.is_torsion(),
        "alexander_chain": chain.as_ref().map(rat_json),
        "alexander_cochain": cochain.as_ref().map(rat_json),
        "duality": duality,
        "pairing": to_value(&pairing),
        "pairing_holds": pairing_verdict,
    });

    let mut text = String::new();
    for d in &h.degrees {
        let factors: Vec<String> = d.factors.iter().map(|f| format!("Λ/({f})")).collect();
        let mut parts = Vec::new();
        if d.free_rank > 0 {
            parts.push(format!("Λ^{}", d.free_rank));
        }
        parts.extend(factors);
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
        let _ = writeln!(text, "H_{} = {body}", d.degree);
    }
    match (&chain, &cochain) {
        (Some(a), Some(b)) => {
            let _ = writeln!(text, "A (chain):   {a}");
            let _ = writeln!(text, "A (cochain): {b}");
            let _ = writeln!(text, "duality A·A^* = 1: {}", verdict(duality));
        }
        _ => {
            let _ = writeln!(text, "Alexander invariants: undefined (homology is not torsion)");
        }
    }
    if pairing.applicable {
        let _ = writeln!(text, "dim H^q of the dual: {:?}, pairing {}", pairing.dims, verdict(pairing_verdict));
    }
    let report = Report::ok(text, json);
    if duality == Some(false) {
        return Err(Failure::internal("chain and cochain invariants are not inverse", report));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// mapping-torus

fn mapping_torus(path: &Path, ctx: &mut NumericContext) -> Outcome {
    let input = load_monodromy(path)?;
    let r = theorem35_report(&input, ctx).map_err(in_file(path))?;
    let mut json = to_value(&r);
    json["command"] = json!("mapping-torus");
    json["name"] = json!(input.name);

    let mut text = String::new();
    if let Some(name) = &input.name {
        let _ = writeln!(text, "monodromy {name} (dimension {})", r.dimension);
    }
    let _ = writeln!(text, "charpoly: {}", r.charpoly);
    let _ = writeln!(text, "Alexander invariant: {}", r.alexander);
    let _ = writeln!(text, "β = dim ker(F − 1) = {}, dim I = {}", r.beta, r.i_dim);
    let _ = writeln!(text, "det(F − 1 | I) = {}", r.det_on_i);
    if !r.applicable {
        let _ = writeln!(text, "not applicable: {}", r.reason.as_deref().unwrap_or(""));
        let reason = r.reason.clone().unwrap_or_else(|| "hypothesis not satisfied".into());
        return Err(Failure::hypothesis(reason, Report::ok(text, json)));
    }
    let _ = writeln!(text, "ord A* = {}, −β = {}", r.ord_a_star, r.minus_beta);
    let _ = writeln!(text, "semisimple at 1: {}", if r.semisimple_at_one { "yes" } else { "no" });
    if r.strict_inequality {
        let _ = writeln!(text, "verdict: strict inequality ord A* < −β (Jordan block at 1)");
    } else if r.order_equality {
        let _ = writeln!(text, "verdict: order equality ord A* = −β");
    } else {
        let _ = writeln!(text, "verdict: FAILS (ord A* > −β)");
    }
    if let (Some(t), Some(l)) = (&r.torsion_abs, &r.limit) {
        let _ = writeln!(text, "|τ| = {t}");
        let _ = writeln!(text, "lim |(t−1)^β A*| = {l}: {}", verdict(r.limit_agrees));
    }
    if r.outside_hypothesis {
        let _ = writeln!(text, "note: the action is not globally semisimple; the order statement still applies");
    }
    let report = Report::ok(text, json);
    if !r.all_hold() {
        return Err(Failure::internal("order dichotomy or limit formula failed", report));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// ruelle

fn ruelle_predict(from: Source, files: &[PathBuf], ctx: &mut NumericContext) -> Outcome {
    let r = match (from, files) {
        (Source::MappingTorus, [file]) => {
            let input = load_monodromy(file)?;
            if !input.h0_vanishes {
                return Err(Failure {
                    kind: ErrorKind::Hypothesis,
                    message: format!("{}: h0_vanishes must be true", file.display()),
                    report: None,
                });
            }
            predict_from_monodromy(&input, ctx).map_err(in_file(file))?
        }
        (Source::Knot, [p, rep]) => predict_from_knot(&load_pipeline(p, rep)?, ctx)?,
        (Source::MappingTorus, _) => return Err(Failure::input("--from mapping-torus takes one monodromy file")),
        (Source::Knot, _) => return Err(Failure::input("--from knot takes a presentation file and a representation file")),
    };
    let mut json = to_value(&r);
    json["command"] = json!("ruelle predict");

    let mut text = String::new();
    let _ = writeln!(text, "source: {}", r.source);
    let _ = writeln!(text, "h0 = {}, h1 = {}", r.h0, r.h1);
    let _ = writeln!(text, "order of R at s = 0: {}", r.order_e);
    for p in &r.predictions {
        let _ = writeln!(text, "|leading coefficient| = {} ({:?})", p.leading_abs, p.provenance);
    }
    if r.routes_agree.is_some() {
        let _ = writeln!(text, "routes agree: {}", verdict(r.routes_agree));
    }
    if let Some(n) = &r.note {
        let _ = writeln!(text, "note: {n}");
    }
    let report = Report::ok(text, json);
    if r.routes_agree == Some(false) {
        return Err(Failure::internal("the two leading-coefficient routes disagree", report));
    }
    Ok(report)
}

fn ruelle_truncate(spectrum: &Path, s: &str, max_length: &str, order: u32, ctx: &mut NumericContext) -> Outcome {
    if order == 0 {
        return Err(Failure::input("--order must be positive"));
    }
    let (re, im) = s.split_once(',').ok_or_else(|| Failure::input(format!("-s {s}: expected RE,IM")))?;
    let parse = |ctx: &mut NumericContext, what: &str, v: &str| {
        ctx.parse(v.trim()).ok_or_else(|| Failure::input(format!("{what}: cannot parse '{v}' as a number")))
    };
    let re = parse(ctx, "-s", re)?;
    let im = parse(ctx, "-s", im)?;
    let cutoff = parse(ctx, "--max-length", max_length)?;
    let point = alexandrite_core::numeric::BigComplex { re, im };
    let file = fs::File::open(spectrum)
        .map_err(|source| Failure::from(Error::Io { path: spectrum.display().to_string(), source }))?;
    let spec = LengthSpectrum::from_csv(file, order, ctx).map_err(in_file(spectrum))?;
    let t = evaluate_truncated(&spec, &point, &cutoff, ctx)?;
    let modulus = ctx.abs(&t.value);
    let json = json!({
        "command": "ruelle truncate",
        "s": { "re": ctx.to_decimal(&point.re, 30), "im": ctx.to_decimal(&point.im, 30) },
        "max_length": max_length,
        "value": { "re": ctx.to_decimal(&t.value.re, 30), "im": ctx.to_decimal(&t.value.im, 30) },
        "abs": ctx.to_decimal(&modulus, 30),
        "terms_used": t.terms_used,
        "last_factor_deviation": ctx.to_decimal(&t.last_factor_deviation, 10),
        "beyond_coverage": t.beyond_coverage,
        "note": "finite product over the given geodesics; a numerical sanity check, not a value of R at s = 0",
    });
    let mut text = String::new();
    let _ = writeln!(
        text,
        "truncated product over {} geodesic classes: {} + {}i",
        t.terms_used,
        json["value"]["re"].as_str().unwrap_or_default(),
        json["value"]["im"].as_str().unwrap_or_default()
    );
    let _ = writeln!(text, "  |value| = {}", json["abs"].as_str().unwrap_or_default());
    let _ = writeln!(text, "  |last factor − 1| = {}", json["last_factor_deviation"].as_str().unwrap_or_default());
    if t.beyond_coverage {
        let _ = writeln!(text, "  warning: the cutoff exceeds the longest geodesic in the spectrum");
    }
    Ok(Report::ok(text, json))
}

// ---------------------------------------------------------------------------
// verify

fn artifact_name(index: usize, property: &str) -> String {
    let clean: String = property.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    format!("{index:05}-{clean}.json")
}

/// One pretty-printed JSON file per failing instance, replayable from its `input`.
fn write_artifacts(failures: &[FailureArtifact], dir: &Path) -> Result<(), Failure> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| Failure::from(Error::Io { path, source })
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for (n, f) in failures.iter().enumerate() {
        let path = dir.join(artifact_name(n, &format!("{}-{}", f.suite, f.property)));
        let body = serde_json::to_string_pretty(f).expect("artifacts serialize");
        fs::write(&path, body).map_err(io(&path))?;
    }
    Ok(())
}

fn verify(opts: &VerifyOptions, artifacts: &Path) -> Outcome {
    let run: VerificationRun = verify_suite(opts);
    let json = to_value(&run);
    let mut text = String::new();
    let _ = writeln!(text, "verify: seed {}, suite {}", run.seed, json["suite"].as_str().unwrap_or_default());
    for p in &run.properties {
        let status = if p.failed > 0 { "FAIL" } else { "ok  " };
        let _ = writeln!(
            text,
            "  {status} {:<10} {:<28} passed {:>5}  failed {:>3}  skipped {:>4}",
            p.suite, p.property, p.passed, p.failed, p.skipped
        );
    }
    if run.all_passed {
        let _ = writeln!(text, "all properties hold");
        return Ok(Report::ok(text, json));
    }
    write_artifacts(&run.failures, artifacts)?;
    let _ = writeln!(text, "{} failure(s) written to {}", run.failures.len(), artifacts.display());
    Err(Failure::internal("verification failed", Report::ok(text, json)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn artifacts_are_written_one_per_failure() {
        let dir = tempfile::tempdir().unwrap();
        let failures: Vec<FailureArtifact> = (0..2)
            .map(|i| FailureArtifact {
                suite: "complexes".into(),
                property: "ideal_equality".into(),
                index: i,
                label: format!("complex {i}"),
                message: "τ/A is not a unit".into(),
                input: json!({ "min_degree": 0 }),
            })
            .collect();
        let out = dir.path().join("artifacts");
        assert!(write_artifacts(&failures, &out).is_ok());
        let mut names: Vec<_> = fs::read_dir(&out).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
        names.sort();
        assert_eq!(names, ["00000-complexes_ideal_equality.json", "00001-complexes_ideal_equality.json"]);
        let back: Value = serde_json::from_str(&fs::read_to_string(out.join(&names[1])).unwrap()).unwrap();
        assert_eq!(back["index"], 1);
        assert_eq!(back["input"]["min_degree"], 0);
    }
}
