//! CLI surface tests: exit-code contract, the build/check loop, byte
//! determinism, and the guardrail environment variable.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use trihopf::corpus;
use trihopf::serialize as ser;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_trihopf")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("HOPF_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn tmp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("trihopf-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_septuple(name: &str, sept: &trihopf::supergroup::TriangularSeptuple) -> PathBuf {
    let path = tmp_dir().join(name);
    fs::write(&path, ser::to_string_pretty(&ser::septuple_to_json(sept))).unwrap();
    path
}

#[test]
fn validate_and_build_check_loop() {
    let sweedler = write_septuple("sweedler.json", &corpus::sweedler());
    let out = run(&["validate", sweedler.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let built = tmp_dir().join("h4.json");
    let out = run(&[
        "build",
        sweedler.to_str().unwrap(),
        "-o",
        built.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let out = run(&["check", built.to_str().unwrap(), "--all"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["chevalley"]["radical_dim"], 2);
    assert_eq!(report["chevalley"]["semisimple"], false);
    assert_eq!(report["minimal"]["minimal"], true);
    // The build output itself records the flags.
    let built_json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&built).unwrap()).unwrap();
    assert_eq!(built_json["minimal"], true);
    assert_eq!(built_json["pointed"], true);
}

#[test]
fn build_outputs_are_byte_identical() {
    let path = write_septuple("klein.json", &corpus::klein_jv());
    let a = run(&["build", path.to_str().unwrap()]);
    let b = run(&["build", path.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_septuple_fails_validation_with_exit_1() {
    let mut bad = corpus::sweedler();
    bad.b_matrix = trihopf::linalg::Mat::zero(1, 1);
    let path = write_septuple("singular.json", &bad);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_violations_exit_2_with_path() {
    let path = tmp_dir().join("broken.json");
    fs::write(&path, r#"{ "group": { "abelian_invariants": [0] } }"#).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("abelian_invariants"), "{err}");
}

#[test]
fn guardrail_exits_3() {
    let path = write_septuple("guarded.json", &corpus::z2_w4());
    let out = Command::new(bin())
        .args(["build", path.to_str().unwrap()])
        .env("HOPF_MAX_DIM", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_z4_is_empty_table() {
    let out = run(&["enumerate", "--group", "4", "--max-n", "2"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json, serde_json::json!([]));
}

#[test]
fn convert_round_trip_via_files() {
    // Enumerated Z/2 datum with n_u = 1 -> Type 1 -> Type 2.
    let g = trihopf::groups::FiniteGroup::build_abelian(&[2]);
    let data = trihopf::pointed::enumerate_minimal_pointed(&g, 1).unwrap();
    let with_w = data.iter().find(|t| t.total_multiplicity() == 1).unwrap();
    let t2_path = tmp_dir().join("t2.json");
    fs::write(&t2_path, ser::to_string_pretty(&ser::type2_to_json(with_w))).unwrap();
    let out = run(&["convert", "--t2-to-t1", t2_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let t1_path = tmp_dir().join("t1.json");
    fs::write(&t1_path, &out.stdout).unwrap();
    let out = run(&["convert", "--t1-to-t2", t1_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let back = ser::type2_from_json(&serde_json::from_slice(&out.stdout).unwrap()).unwrap();
    assert!(trihopf::pointed::type2_isomorphic(with_w, &back).unwrap());
}

#[test]
fn iso_exit_codes() {
    let a = write_septuple("iso_a.json", &corpus::sweedler());
    let b = write_septuple("iso_b.json", &corpus::sweedler_with_b(4));
    let out = run(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["isomorphic"], true);

    let c = write_septuple("iso_c.json", &corpus::z2_with_u());
    let out = run(&["iso", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
