use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::{json, Value};
use specsupp::algmod::{structure_modules, AlgebraSpec, Module};
use specsupp::PrimeField;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_specsupp"));
    cmd.args(args).env_remove("SPECSUPP_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn golden_algebra(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/algebras").join(format!("{name}.json"))
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn a2_modules(dir: &Path) -> (String, String) {
    let alg = Arc::new(AlgebraSpec::a2().build(&PrimeField::new(1009).unwrap()).unwrap());
    let s1 = structure_modules(&alg).simples[0].to_json();
    let zero = Module::zero(alg).to_json();
    (write(dir, "S1.json", &s1), write(dir, "zero.json", &zero))
}

#[test]
fn supp_of_module_files() {
    let dir = tempfile::tempdir().unwrap();
    let (s1, zero) = a2_modules(dir.path());
    let a2 = golden_algebra("a2");
    let out = run(&["supp", "--algebra", a2.to_str().unwrap(), "--module", &s1]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json_of(&out)["supp"], json!(["I1"]));
    let out = run(&["supp", "--module", &zero]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["supp"], json!([]));
    assert_eq!(json_of(&out)["seed"], json!(0));
}

#[test]
fn exact_support_of_the_simple() {
    let out = run(&["suppex", "--module", "S1"]);
    let v = json_of(&out);
    assert_eq!(v["supp_ex"], json!(["I1", "I2"]));
    assert_eq!(v["complete"], json!(true));
    assert_eq!(v["terms"], json!([{"I1": 1}, {"I2": 1}]));
}

#[test]
fn golden_passes() {
    let out = run(&["golden"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["checks"].as_array().unwrap().len(), 13);
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (vec!["supp", "--module", "S1", "--field-p", "4"], "--field-p"),
        (vec!["supp"], "--module"),
        (vec!["supp", "--module", "Q7"], "--module"),
        (vec!["supp", "--module", "S1", "--format", "dot"], "--format"),
        (vec!["supp", "--module", "S1", "--algebra", "nonesuch"], "--algebra"),
        (vec!["closure", "--module", "S1", "--dim-cap", "0"], "--dim-cap"),
        (vec!["stone", "spec"], "--ring"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
    let out = run_env(&["spectrum"], &[("SPECSUPP_BUDGET", "many")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("SPECSUPP_BUDGET"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_one_with_a_report() {
    let out = run_env(&["ziegler", "--dmax", "4"], &[("SPECSUPP_BUDGET", "3")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"], json!("BudgetExceeded"));
    assert_eq!(v["seed"], json!(0));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["closure", "--generators", "S1,S2", "--dim-cap", "4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let out_path = dir.path().join("closure.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out_path.to_str().unwrap()]);
    let c = run(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), a.stdout);
    assert_eq!(json_of(&a)["seed"], json!(9));
}

#[test]
fn decomposition_lattice_dot() {
    let out = run(&["dlattice", "--module", "I1+I2", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("label=").count(), 4);
    assert_eq!(dot.matches("->").count(), 4);
    let out = run(&["dlattice", "--module", "S1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], json!("NotInjective"));
}

#[test]
fn realize_splits_along_the_partition() {
    let out = run(&["realize", "--module", "I1^2+I2", "--partition", "I1", "--partition", "I2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json_of(&out);
    assert_eq!(v["parts"][0]["module"], json!("I1^2"));
    assert_eq!(v["parts"][1]["dim"], json!(1));
    assert_eq!(v["isomorphism"], json!(true));
}

#[test]
fn closures_of_the_simples() {
    let stable = |m: &str| json_of(&run(&["closure", "--module", m, "--dim-cap", "4"]))["stable"].clone();
    assert_eq!(stable("S1"), json!(false));
    assert_eq!(stable("S2"), json!(true));
}

#[test]
fn datum_verify_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "datum.json",
        &json!({
            "space": {"points": ["p", "q"]},
            "sigma": [
                {"module": "0", "subset": []},
                {"module": "I1", "subset": ["p"]},
                {"module": "I2", "subset": ["q"]},
                {"module": "I1+I2", "subset": ["p", "q"]}
            ],
            "exact": false,
            "callback": "supp",
            "point_map": {"p": "I1", "q": "I2"}
        }),
    );
    let out = run(&["datum", "verify", "--datum", &good]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = run(&["datum", "map", "--datum", &good]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["universal_map"]["map"], json!({"p": "I1", "q": "I2"}));
    assert_eq!(v["universality"]["status"]["kind"], json!("unique"));

    let bad = write(
        dir.path(),
        "bad.json",
        &json!({"space": {"points": ["p"]}, "sigma": [{"module": "0", "subset": ["p"]}], "exact": false}),
    );
    assert_eq!(run(&["datum", "verify", "--datum", &bad]).status.code(), Some(1));
}

#[test]
fn stone_commands() {
    let out = run(&["stone", "unit", "--atoms", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["bijective"], json!(true));

    let out = run(&["stone", "spec", "--atoms", "1", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("label=").count(), 2);
    assert_eq!(dot.matches("->").count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let hom = write(
        dir.path(),
        "hom.json",
        &json!({"source": {"atoms": ["a", "b"]}, "target": {"atoms": ["x", "y", "z"]}, "images": [[0, 2], [1]]}),
    );
    let v = json_of(&run(&["stone", "adjoint", "--hom", &hom]));
    assert_eq!(v["transpose"], json!({"x": "a", "y": "b", "z": "a"}));
    assert_eq!(v["round_trip"], json!(true));

    let input = write(
        dir.path(),
        "cover.json",
        &json!({"ring": {"atoms": ["a", "b", "c"]}, "x": {"atoms": [0, 1, 2]}, "family": [{"atoms": [0, 1]}, {"atoms": [1, 2]}]}),
    );
    let v = json_of(&run(&["stone", "disjointify", "--input", &input]));
    assert_eq!(v["family"], json!([{"atoms": [0, 1]}, {"atoms": [2]}]));
    assert_eq!(v["pairwise_disjoint"], json!(true));

    let not_hom = write(
        dir.path(),
        "not_hom.json",
        &json!({"source": {"atoms": ["a", "b"]}, "target": {"atoms": ["x"]}, "images": [[0], [0]]}),
    );
    let out = run(&["stone", "adjoint", "--hom", &not_hom]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], json!("NotAHomomorphism"));
}

#[test]
fn ziegler_with_correspondence_check() {
    let out = run(&["ziegler", "--field-p", "3", "--dmax", "4", "--check"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    let names: Vec<&str> = v["points"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["S1", "S2", "I1"]);
    assert_eq!(v["correspondence"]["subsets_checked"], json!(8));
    assert_eq!(v["field"], json!(3));
}

#[test]
fn spectrum_of_shipped_algebras() {
    for (name, count) in [("a2", 2), ("dual_numbers", 1), ("k_times_k", 2)] {
        let v = json_of(&run(&["spectrum", "--algebra", golden_algebra(name).to_str().unwrap()]));
        assert_eq!(v["spectrum"].as_array().unwrap().len(), count);
        assert_eq!(v["algebra"], json!(name));
    }
}
