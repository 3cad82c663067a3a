use std::path::Path;
use std::process::{Command, Output};

use idlattice::{families, total_variation_distance, Tolerances};
use idlattice_cli::pmf_file;
use serde_json::Value;

fn idlattice(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idlattice")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let mut all = args.to_vec();
    all.push("--json");
    let out = idlattice(&all, dir.path());
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)));
    (out.status.code().unwrap(), value)
}

#[test]
fn poisson_is_recognized() {
    let (code, v) = json(&["test-id", "--family", "poisson:2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "IdIntegerComponents");
    assert!((v["form"]["rate"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn binomial_has_a_witness() {
    let (code, v) = json(&["test-id", "--family", "binomial:2,0.5"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "NotId");
    assert_eq!(v["witness_index"], 2);
    assert!((v["witness_value"].as_f64().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn unit_translate_is_shifted() {
    let (code, v) = json(&["test-id", "--family", "ex2:0.5,2,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "IdShifted");
    assert_eq!(v["shift"], 1);
}

#[test]
fn geometric_factorizes_into_logarithmic_jumps() {
    let (code, v) = json(&["factorize", "--family", "geometric:0.5"]);
    assert_eq!(code, 0);
    assert!((v["rate"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-12);
    let probs = v["jump"]["probs"].as_array().unwrap();
    for (m, w) in probs.iter().enumerate().take(40).skip(1) {
        let exact = 0.5f64.powi(m as i32) / (m as f64 * 2f64.ln());
        assert!((w.as_f64().unwrap() - exact).abs() < 1e-12);
    }

    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&idlattice(&["factorize", "--family", "geometric:0.5"], dir.path()));
    assert!(text.contains("rate: 0.693147"), "{text}");
}

#[test]
fn cube_root_of_negative_binomial_is_geometric() {
    let dir = tempfile::tempdir().unwrap();
    let out = idlattice(&["root", "3", "--family", "negbin:0.5,1,3"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let root = pmf_file::load(&dir.path().join("root.json"), &Tolerances::DEFAULT).unwrap();
    let geometric = families::geometric(0.5, 0, 256).unwrap();
    assert!(total_variation_distance(&root, &geometric).distance < 1e-12);

    let out = idlattice(&["root", "2", "--family", "poisson:1", "-o", "half.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("half.json").exists());
}

#[test]
fn lattice_support_report() {
    let (code, v) = json(&["support", "--family", "ex1:0.5,3,1"]);
    assert_eq!(code, 0);
    let atoms: Vec<u64> = v["atoms"].as_array().unwrap().iter().map(|a| a.as_u64().unwrap()).collect();
    assert_eq!(&atoms[..4], &[0, 3, 6, 9]);
    assert!(atoms.iter().all(|a| a % 3 == 0));
    assert_eq!(v["lattice_gcd"], 3);
    assert_eq!(v["gaps"][0], serde_json::json!([1, 2]));
    assert_eq!(v["gap_free"], false);

    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&idlattice(&["support", "--family", "ex1:0.5,3,1"], dir.path()));
    assert!(text.contains("atoms") && text.contains("{0, 3, 6") && text.contains("lattice_gcd: 3"), "{text}");
}

#[test]
fn compose_writes_a_loadable_law() {
    let dir = tempfile::tempdir().unwrap();
    let out = idlattice(&["compose", "--rate", "2", "--jump", "1", "--truncation", "40", "-o", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let p = pmf_file::load(&dir.path().join("p.json"), &Tolerances::DEFAULT).unwrap();
    let direct = families::poisson(2.0, 40).unwrap();
    assert!(total_variation_distance(&p, &direct).distance < 1e-14);

    std::fs::write(dir.path().join("form.json"), r#"{"rate": 1.5, "jump": [0, 0.5, 0, 0.5]}"#).unwrap();
    let out = idlattice(&["compose", "--form", "form.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = idlattice(&["--json", "test-id", "--input", "compose.json"], dir.path());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["form"]["rate"].as_f64().unwrap() - 1.5).abs() < 1e-12);
}

#[test]
fn saved_pmfs_load_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("law.json");
    for law in [families::poisson(3.7, 256).unwrap(), families::shifted_negbin_lattice(0.4, 3, 2.0, 300).unwrap()] {
        pmf_file::save(&path, &law).unwrap();
        let back = pmf_file::load(&path, &Tolerances::DEFAULT).unwrap();
        let bits = |p: &idlattice::Pmf| p.probs().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&back), bits(&law));
        assert_eq!(back.tail_bound().to_bits(), law.tail_bound().to_bits());
    }
}

#[test]
fn family_specs_are_pure() {
    let (_, a) = json(&["factorize", "--family", "negbin:0.3,2,1.5"]);
    let (_, b) = json(&["factorize", "--family", "negbin:0.3,2,1.5"]);
    assert_eq!(a, b);
}

#[test]
fn verify_suites_pass() {
    for suite in ["theorem1", "theorem5", "remark1"] {
        let (code, v) = json(&["verify", suite]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["suites"][0]["suite"], suite);
        assert_eq!(v["suites"][0]["passed"], true);
    }
    let (code, v) = json(&["verify", "all", "--count", "5", "--sequential", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| idlattice(args, dir.path()).status.code().unwrap();
    assert_eq!(code(&["test-id", "--family", "poisson:2", "--truncation", "10", "--tolerance", "heavy_tail=0"]), 2);
    assert_eq!(code(&["test-id", "--family", "zeta:2"]), 1);
    assert_eq!(code(&["test-id"]), 1);
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["verify", "nope"]), 1);
    assert_eq!(code(&["test-id", "--family", "poisson:1", "--tolerance", "foo=1"]), 1);
    assert_eq!(code(&["factorize", "--family", "binomial:3,0.5"]), 1);
    assert_eq!(code(&["test-id", "--input", "missing.json"]), 1);
    std::fs::write(dir.path().join("bad.json"), r#"{"truncation": 1, "probs": [0.5, 0.7]}"#).unwrap();
    assert_eq!(code(&["test-id", "--input", "bad.json"]), 1);
    assert_eq!(code(&["--help"]), 0);
}
