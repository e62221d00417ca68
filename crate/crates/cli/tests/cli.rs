//! End-to-end tests of the command-line interface: output contracts, exit
//! codes, error JSON, and determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gamedecomp"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gamedecomp-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_catalog(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let out = bin()
        .args(["catalog", name, "--out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "catalog {name}: {out:?}");
    path
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn catalog_emits_parseable_games() {
    let out = bin().args(["catalog", "rps"]).output().unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["players"], 2);
    assert_eq!(v["strategies"][0][0], "Rock");
    assert_eq!(v["payoffs"][0][0][1], -1.0);
}

#[test]
fn classify_reports_flags_and_evidence() {
    let dir = tmp_dir("classify");
    let rps = write_catalog(&dir, "rps");
    let out = bin()
        .args(["classify", "--input", rps.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["flags"]["zero_sum_equivalent"], true);
    assert_eq!(v["flags"]["potential"], false);
    assert_eq!(v["evidence"]["potential_worst_violation"], 6.0);
}

#[test]
fn decompose_main_writes_component_files() {
    let dir = tmp_dir("decompose");
    let demo = write_catalog(&dir, "demo");
    let out_dir = dir.join("components");
    let out = bin()
        .args([
            "decompose",
            "--input",
            demo.to_str().unwrap(),
            "--scheme",
            "main",
            "--out",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["scheme"], "main");
    assert!(v["residual"].as_f64().unwrap() <= 1e-9);
    for name in [
        "normalized_common_interest",
        "normalized_zero_sum",
        "zero_sum_potential",
    ] {
        let path = out_dir.join(format!("main-{name}.json"));
        assert!(path.exists(), "{path:?} missing");
        let text = std::fs::read_to_string(path).unwrap();
        let g: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(g["players"], 2);
    }
    // the normalized zero-sum component of the demo game is the cyclic game
    let z: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(out_dir.join("main-normalized_zero_sum.json")).unwrap(),
    )
    .unwrap();
    assert!((z["payoffs"][0][0][1].as_f64().unwrap() + 1.0).abs() <= 1e-12);
    assert!(z["payoffs"][0][0][0].as_f64().unwrap().abs() <= 1e-12);
}

#[test]
fn decompose_elementary_emits_both_splits() {
    let dir = tmp_dir("elementary");
    let demo = write_catalog(&dir, "demo");
    let out = bin()
        .args([
            "decompose",
            "--input",
            demo.to_str().unwrap(),
            "--scheme",
            "elementary",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    let arr = v.as_array().expect("array output");
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["scheme"], "elementary-cz");
    assert_eq!(arr[1]["scheme"], "elementary-ne");
}

#[test]
fn solve_methods_cover_the_catalog() {
    let dir = tmp_dir("solve");
    let demo = write_catalog(&dir, "demo");
    let out = bin()
        .args(["solve", "--input", demo.to_str().unwrap(), "--method", "pure"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["method"], "pure");
    assert_eq!(v["profiles"].as_array().unwrap().len(), 3);

    let rps = write_catalog(&dir, "rps");
    let out = bin()
        .args(["solve", "--input", rps.to_str().unwrap(), "--method", "minimax"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"], 0.0);

    let out = bin()
        .args(["solve", "--input", rps.to_str().unwrap(), "--method", "uniform"])
        .output()
        .unwrap();
    assert!(out.status.success());

    let pd = write_catalog(&dir, "separable-pd");
    let out = bin()
        .args(["solve", "--input", pd.to_str().unwrap(), "--method", "dominant"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["profiles"][0][0][1], 1.0); // defect carries all mass
}

#[test]
fn phi_grid_csv_has_header_and_rows() {
    let dir = tmp_dir("phi");
    let rps = write_catalog(&dir, "rps");
    let csv_path = dir.join("grid.csv");
    let out = bin()
        .args([
            "phi",
            "--input",
            rps.to_str().unwrap(),
            "--resolution",
            "6",
            "--out",
            csv_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(csv_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "p1,p2,p3,phi");
    assert_eq!(lines.count(), 28); // C(6+2, 2)
}

#[test]
fn exit_codes_and_error_json() {
    let dir = tmp_dir("errors");

    // malformed input: exit 1
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"players\": 2}").unwrap();
    let out = bin()
        .args(["classify", "--input", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_game");

    // precondition failure: exit 2
    let demo = write_catalog(&dir, "demo");
    let out = bin()
        .args(["solve", "--input", demo.to_str().unwrap(), "--method", "minimax"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "precondition");

    // missing file: exit 1
    let out = bin()
        .args(["classify", "--input", dir.join("nope.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_env_var_is_honored() {
    let dir = tmp_dir("tolenv");
    let rps = write_catalog(&dir, "rps");
    let out = bin()
        .args(["classify", "--input", rps.to_str().unwrap()])
        .env("GAMEDECOMP_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // a huge tolerance makes the cyclic game count as a potential game,
    // which trips the cross-validation against projection norms
    let out = bin()
        .args(["classify", "--input", rps.to_str().unwrap()])
        .env("GAMEDECOMP_TOL", "100.0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "internal_consistency");

    // the flag takes precedence over the environment
    let out = bin()
        .args(["classify", "--input", rps.to_str().unwrap(), "--tol", "1e-9"])
        .env("GAMEDECOMP_TOL", "not-a-number")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn output_is_deterministic() {
    let dir = tmp_dir("determinism");
    let demo = write_catalog(&dir, "demo");
    let run = || {
        bin()
            .args([
                "decompose",
                "--input",
                demo.to_str().unwrap(),
                "--scheme",
                "four",
            ])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());

    let rand = |seed: &str| {
        bin()
            .args([
                "catalog",
                "random",
                "--params",
                "class=zero-sum-potential",
                "--params",
                "sizes=2,3,2",
                "--params",
                &format!("seed={seed}"),
            ])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(rand("7"), rand("7"));
    assert_ne!(rand("7"), rand("8"));
}

#[test]
fn verify_paper_passes() {
    let out = bin().arg("verify-paper").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    let pass_lines = text.lines().filter(|l| l.starts_with("PASS criterion")).count();
    assert_eq!(pass_lines, 12, "{text}");
}
