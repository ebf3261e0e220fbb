use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexandrite")).args(args).current_dir(root()).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&out)));
    (code(&out), v)
}

fn assert_valid(schema: &str, instance: &Value) {
    let path = root().join("schemas").join(format!("{schema}.schema.json"));
    let schema: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{}: {errors:#?}", path.display());
}

#[test]
fn trefoil_prints_canonical_form() {
    let out = run(&["twisted-alexander", "-p", "data/knots/trefoil.toml", "-r", "data/reps/trivial.toml"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("(t^2 - t + 1)/(t - 1)"));
}

#[test]
fn jordan_monodromy_reports_strict_inequality() {
    let (c, v) = json(&["mapping-torus", "-f", "data/monodromy/jordan.toml"]);
    assert_eq!(c, 0);
    assert_eq!(v["strict_inequality"], true);
    assert_eq!(v["order_equality"], false);
}

#[test]
fn every_report_matches_its_schema() {
    let knots = ["unknot", "trefoil", "figure_eight", "5_1", "5_2"];
    for knot in knots {
        for rep in ["trivial", "zeta3"] {
            let p = format!("data/knots/{knot}.toml");
            let r = format!("data/reps/{rep}.toml");
            if knot == "unknot" && rep == "zeta3" {
                continue;
            }
            let (c, v) = json(&["twisted-alexander", "-p", &p, "-r", &r]);
            assert_eq!(c, 0, "{knot}/{rep}");
            assert_valid("twisted-alexander", &v);
            for dual in [false, true] {
                let mut args = vec!["homology", "-p", &p, "-r", &r];
                if dual {
                    args.push("--dual");
                }
                let (c, v) = json(&args);
                assert_eq!(c, 0);
                assert_valid("homology", &v);
                args[0] = "torsion";
                let (c, v) = json(&args);
                assert_eq!(c, 0);
                assert_valid("torsion", &v);
            }
        }
    }
    for name in ["identity", "scalar_two", "minus_identity", "jordan", "cyclotomic"] {
        let f = format!("data/monodromy/{name}.toml");
        let (c, v) = json(&["mapping-torus", "-f", &f]);
        assert_eq!(c, 0, "{name}");
        assert_valid("mapping-torus", &v);
        let (c, v) = json(&["ruelle", "predict", "--from", "mapping-torus", &f]);
        assert_eq!(c, 0, "{name}");
        assert_valid("ruelle-predict", &v);
    }
    let (c, v) =
        json(&["ruelle", "predict", "--from", "knot", "data/knots/figure_eight.toml", "data/reps/d5_twisted.toml"]);
    assert_eq!(c, 0);
    assert_valid("ruelle-predict", &v);
    assert_eq!(v["routes_agree"], true);
    let (c, v) = json(&[
        "ruelle", "truncate", "--spectrum", "data/spectra/example.csv", "-s", "1.5,-0.5", "--max-length", "2", "--order", "3",
    ]);
    assert_eq!(c, 0);
    assert_valid("ruelle-truncate", &v);
    assert_eq!(v["terms_used"], 3);
    let (c, v) = json(&["torsion", "-c", "data/complexes/elementary.json"]);
    assert_eq!(c, 0);
    assert_valid("torsion", &v);
    let input: Value = serde_json::from_str(&fs::read_to_string(root().join("data/complexes/elementary.json")).unwrap()).unwrap();
    assert_valid("complex", &input);
    let (c, v) = json(&["verify", "--complexes", "4", "--words", "10", "--presentations", "2", "--semisimple", "3", "--jordan", "2"]);
    assert_eq!(c, 0);
    assert_valid("verify", &v);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--seed", "7", "--complexes", "10", "--words", "40", "--presentations", "4", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let other = run(&["verify", "--seed", "8", "--complexes", "10", "--words", "40", "--presentations", "4", "--json"]);
    let v: Value = serde_json::from_slice(&other.stdout).unwrap();
    assert_eq!(v["seed"], 8);
}

#[test]
fn verify_suite_selection() {
    let (c, v) = json(&["verify", "--suite", "fox", "--words", "25"]);
    assert_eq!(c, 0);
    assert_eq!(v["suite"], "fox");
    let props: Vec<&str> = v["properties"].as_array().unwrap().iter().map(|p| p["property"].as_str().unwrap()).collect();
    assert_eq!(props, ["fox_identity", "fox_identity_phi"]);
    assert_eq!(v["properties"][0]["passed"], 25);
}

#[test]
fn input_errors_exit_one_with_locations() {
    let dir = tempfile::tempdir().unwrap();
    let bad_toml = dir.path().join("bad.toml");
    fs::write(&bad_toml, "generators = [\"x\", \"y\"]\nrelators = [\"x y X\"\n").unwrap();
    let out = run(&["twisted-alexander", "-p", bad_toml.to_str().unwrap(), "-r", "data/reps/trivial.toml"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2, column"), "{}", stderr(&out));

    let bad_word = dir.path().join("word.toml");
    fs::write(&bad_word, "generators = [\"x\", \"y\"]\nrelators = [\"x q\"]\n").unwrap();
    let out = run(&["twisted-alexander", "-p", bad_word.to_str().unwrap(), "-r", "data/reps/trivial.toml"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("relators[0]"), "{}", stderr(&out));

    let bad_csv = dir.path().join("s.csv");
    fs::write(&bad_csv, "length,multiplicity,holonomy\n1.0,1,charpoly:1|2|1\n0.5,1,scalar:1\n").unwrap();
    let out = run(&["ruelle", "truncate", "--spectrum", bad_csv.to_str().unwrap(), "-s", "1,0", "--max-length", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    let bad_json = dir.path().join("c.json");
    fs::write(&bad_json, "{\"min_degree\": 0,\n \"ranks\": [1, 1],\n \"boundaries\": [}").unwrap();
    let out = run(&["torsion", "-c", bad_json.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    assert_eq!(code(&run(&["twisted-alexander", "-p", "missing.toml", "-r", "data/reps/trivial.toml"])), 1);
    assert_eq!(code(&run(&["twisted-alexander", "-p", "data/knots/trefoil.toml", "-r", "data/reps/s3.toml", "--column", "0"])), 1);
    assert_eq!(code(&run(&["twisted-alexander", "--bogus"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["ruelle", "predict", "--from", "knot", "data/knots/trefoil.toml"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn hypothesis_failures_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("m.toml");
    fs::write(&mono, "dimension = 1\nmatrix = [[2]]\nh0_vanishes = false\n").unwrap();
    let out = run(&["mapping-torus", "-f", mono.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("not applicable"));
    assert_eq!(code(&run(&["ruelle", "predict", "--from", "mapping-torus", mono.to_str().unwrap()])), 2);

    // zero boundary: the complex is not acyclic, so there is no torsion
    let zero = dir.path().join("zero.json");
    fs::write(
        &zero,
        r#"{"min_degree":0,"ranks":[1,1],"boundaries":[{"degree":1,"rows":1,"cols":1,"entries":[[{"min_exp":0,"coeffs":[],"cyclotomic_order":1}]]}]}"#,
    )
    .unwrap();
    assert_eq!(code(&run(&["torsion", "-c", zero.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["homology", "-c", zero.to_str().unwrap()])), 0);

    // two relators on two generators: deficiency 0
    let pres = dir.path().join("p.toml");
    fs::write(&pres, "generators = [\"x\", \"y\"]\nrelators = [\"x y X Y\", \"x y x Y X Y\"]\n").unwrap();
    let out = run(&["twisted-alexander", "-p", pres.to_str().unwrap(), "-r", "data/reps/trivial.toml"]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
}

#[test]
fn passing_verification_leaves_no_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let artifacts = dir.path().join("out");
    let out = run(&["verify", "--suite", "fox", "--words", "5", "--artifacts", artifacts.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(!artifacts.exists());
}
