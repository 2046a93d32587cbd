use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclocover"))
        .current_dir(fixtures())
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "cyclocover-report/1");
    v["results"].clone()
}

#[test]
fn multinet_verify_reports_valid() {
    let r = report(&["multinet", "verify", "-a", "b3.json", "-n", "b3net.json"]);
    assert_eq!(r["valid"], true);
    assert_eq!(r["multinet"]["weight"], 4);
    assert!(r["pointed"]["Valid"].is_object());
}

#[test]
fn pipeline_with_integral_confirmation() {
    let r = report(&[
        "milnor",
        "pipeline",
        "-a",
        "b3.json",
        "-n",
        "b3net.json",
        "--hyperplane",
        "z",
        "--prime",
        "2",
        "--integral",
    ]);
    assert_eq!(r["integral"]["group"], "Z^7 + Z/2 + Z/2");
    assert_eq!(r["bound"], 2);
    assert_eq!(r["chain"][4]["N"], 15);
}

#[test]
fn selftest_passes() {
    let r = report(&["selftest", "fixtures"]);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["passed"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["arr", "validate", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["arr", "validate", "-a", "missing.json"])
            .status
            .code(),
        Some(2)
    );
    let bad_char = run(&[
        "cover",
        "h1",
        "--presentation",
        "one_torus.json",
        "--order",
        "4",
        "--exponents",
        "1,0",
        "--char",
        "2",
    ]);
    assert_eq!(bad_char.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_char.stderr).contains("divides"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let args = [
        "cover",
        "charpoly",
        "--strat",
        "ccm.json",
        "--chi",
        "ccm_chi.json",
        "--char",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
    assert_eq!(v["results"]["charpoly"], "(t-1)^6(t^2+t+1)^2");
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("cyclocover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&[
        "arr",
        "poincare",
        "-a",
        "deleted_b3.json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        v["results"]["projective_complement"],
        serde_json::json!([1, 7, 12])
    );
    assert_eq!(v["results"]["euler_characteristic"], 6);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn arrangement_and_presentation_commands() {
    let r = report(&["arr", "flats", "-a", "braid.json"]);
    assert_eq!(
        (r["count"].as_u64(), r["multiple_points"].as_u64()),
        (Some(7), Some(4))
    );
    let r = report(&["present", "sweep", "-a", "braid.json"]);
    assert_eq!(r["abelianization"], "Z^5");
    let r = report(&["polarize", "-a", "pl4_polar.json"]);
    assert_eq!(
        (r["hyperplanes"].as_u64(), r["rank"].as_u64()),
        (Some(9), Some(5))
    );
    let r = report(&["arr", "validate", "-a", "monomial_p3.json"]);
    assert_eq!(r["hyperplanes"], 12);
}

#[test]
fn cover_and_milnor_commands() {
    let r = report(&[
        "cover",
        "delta",
        "-a",
        "braid.json",
        "--order",
        "6",
        "--exponents",
        "1,1,1,1,1,1",
    ]);
    assert_eq!(r["delta"], "u1 + (5u1+2u3)x + (6u1+2u2+6u3+4u6)x^2");
    let r = report(&[
        "cover",
        "h1",
        "--presentation",
        "one_torus.json",
        "--chi",
        "one_torus_chi.json",
        "--integral",
        "--prime",
        "2",
    ]);
    assert_eq!(r["dimension"], 2);
    assert_eq!(r["integral"]["group"], "Z^2 + Z/2 + Z/2");
    assert_eq!(r["torsion"]["bound"], 2);
    let r = report(&[
        "milnor",
        "character",
        "-a",
        "braid.json",
        "--m",
        "1,1,1,1,1,1",
    ]);
    assert_eq!(r["n"], 6);
    let r = report(&[
        "milnor",
        "recognize",
        "-a",
        "deleted_b3.json",
        "--order",
        "15",
        "--exponents",
        "2,1,3,3,2,2,1,1",
    ]);
    assert_eq!(r["m"], serde_json::json!([2, 1, 3, 3, 2, 2, 1, 1]));
    let r = report(&[
        "milnor",
        "find-m",
        "--chi",
        "deleted_b3_chi3.json",
        "--prime",
        "2",
        "--forbid-two",
    ]);
    assert_eq!(r["N"], 27);
    let r = report(&[
        "milnor",
        "polar-torsion",
        "-a",
        "deleted_b3_polar.json",
        "--prime",
        "2",
    ]);
    assert_eq!(
        (r["degree"].as_u64(), r["bound"].as_u64()),
        (Some(6), Some(108))
    );
    let r = report(&[
        "milnor",
        "delta",
        "-a",
        "deleted_b3_polar.json",
        "--char",
        "2",
        "--degree",
        "6",
    ]);
    assert_eq!(r["charpolys"]["6"], "(t-1)^11968(t^2+t+1)^54");
}
