use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cvsep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvsep"))
        .args(args)
        .output()
        .expect("spawn cvsep")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cvsep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn check_entangled_symmetric_state() {
    let v = json(&cvsep(&["check", "--n1", "2", "--n2", "2", "--mc", "1.8"]));
    assert_eq!(v["measures"]["physical"], true);
    assert_eq!(v["measures"]["separable"], false);
    assert_eq!(v["symmetric_class"], "entangled");
    assert_eq!(v["ports"][0]["p_representable"], false);
    let e = v["measures"]["degree"].as_f64().unwrap();
    assert!(e > 0.0 && e < 1.0);
}

#[test]
fn check_vacuum_defaults() {
    let v = json(&cvsep(&["check"]));
    assert_eq!(v["measures"]["separable"], true);
    let f = v["measures"]["fidelity"].as_f64().unwrap();
    assert!((f - 1.0 / 1f64.cosh().powi(2)).abs() < 1e-12);
}

#[test]
fn complex_flags_accept_pairs_and_negatives() {
    let v = json(&cvsep(&[
        "check", "--n1", "2", "--n2", "2", "--mc", "-1.2,0.5", "--ms", "0,-0.1",
    ]));
    assert_eq!(v["params"]["mc"][0].as_f64().unwrap(), -1.2);
    assert_eq!(v["params"]["mc"][1].as_f64().unwrap(), 0.5);
    assert_eq!(v["params"]["ms"][1].as_f64().unwrap(), -0.1);
}

#[test]
fn nonphysical_state_exits_2() {
    let out = cvsep(&["check", "--n1", "1", "--n2", "1", "--mc", "1.8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not physical"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(cvsep(&["check", "--bogus"]).status.code(), Some(1));
    assert_eq!(cvsep(&["check", "--mc", "1,2,3"]).status.code(), Some(1));
    assert_eq!(cvsep(&["tmtss", "--d", "1"]).status.code(), Some(1));
    assert_eq!(cvsep(&[]).status.code(), Some(1));
    assert_eq!(cvsep(&["--help"]).status.code(), Some(0));
    assert_eq!(cvsep(&["--version"]).status.code(), Some(0));
}

#[test]
fn transform_from_params_file() {
    let path = scratch("sym.json", r#"{"n1": 2, "n2": 2, "mc": [1.8, 0]}"#);
    let v = json(&cvsep(&["transform", "--state", path.to_str().unwrap()]));
    assert_eq!(v["decoupled"], true);
    assert!((v["mode1"]["m"][0].as_f64().unwrap() + 1.8).abs() < 1e-12);
    assert!((v["mode2"]["m"][0].as_f64().unwrap() - 1.8).abs() < 1e-12);
    assert!(v["coupling_norm"].as_f64().unwrap() < 1e-12);
}

#[test]
fn transform_from_covariance_round_trips() {
    let path = scratch(
        "prod.json",
        r#"{"n1": 1.5, "m1": [0.3, 0.2], "n2": 0.9, "m2": 0.1, "ms": [0.2, -0.1], "mc": [0.4, 0.3]}"#,
    );
    let fwd = json(&cvsep(&[
        "transform",
        "--state",
        path.to_str().unwrap(),
        "--theta",
        "0.4",
        "--phi0",
        "-0.3",
        "--phi1",
        "1.1",
    ]));
    let cov = serde_json::json!({ "covariance": fwd["output"] });
    let back_path = scratch("out.json", &cov.to_string());
    let back = json(&cvsep(&[
        "transform",
        "--state",
        back_path.to_str().unwrap(),
        "--theta",
        "-0.4",
        "--phi0",
        "0.3",
        "--phi1",
        "1.1",
    ]));
    let orig = &fwd["input"];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..2 {
                let a = orig[i][j][k].as_f64().unwrap();
                let b = back["output"][i][j][k].as_f64().unwrap();
                assert!((a - b).abs() < 1e-12, "({i},{j},{k}): {a} vs {b}");
            }
        }
    }
}

#[test]
fn transform_rejects_bad_files() {
    let missing = cvsep(&["transform", "--state", "/nonexistent/state.json"]);
    assert_eq!(missing.status.code(), Some(1));
    let path = scratch("bad.json", r#"{"n1": 2}"#);
    assert_eq!(
        cvsep(&["transform", "--state", path.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    let mut rows = vec![vec![[0.0, 0.0]; 4]; 4];
    rows[0][0] = [1.0, 0.0];
    rows[1][1] = [3.0, 0.0];
    let path = scratch(
        "layout.json",
        &serde_json::json!({ "covariance": rows }).to_string(),
    );
    assert_eq!(
        cvsep(&["transform", "--state", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_csv_to_file_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("cvsep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    let args = [
        "sweep",
        "--n-steps",
        "11",
        "--m-steps",
        "7",
        "--n-max",
        "2.5",
        "--m-max",
        "1.5",
    ];
    for path in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", path.to_str().unwrap()]);
        let out = cvsep(&full);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "n,m,class,E");
    assert_eq!(lines.len(), 1 + 11 * 7);
    assert!(lines[1].starts_with("5.00000000e-1,0.00000000e0,separable,"));
}

#[test]
fn sweep_matrix_to_stdout() {
    let out = cvsep(&[
        "sweep",
        "--n-steps",
        "3",
        "--m-steps",
        "4",
        "--format",
        "matrix",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("4 "));
    assert!(lines[1].contains("nan"));
}

#[test]
fn sweep_rejects_bad_config() {
    let out = cvsep(&["sweep", "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(cvsep(&["sweep", "--n-steps", "1"]).status.code(), Some(2));
}

#[test]
fn tmtss_outputs_and_errors() {
    let v = json(&cvsep(&[
        "tmtss", "--d", "1", "--r", "-0.2", "--nbar", "0.5",
    ]));
    assert!((v["params"]["n1"].as_f64().unwrap() - 2.262512).abs() < 1e-6);
    assert!((v["params"]["mc"][0].as_f64().unwrap() - 1.458051).abs() < 1e-6);
    assert_eq!(v["class"], "separable");

    let bad = cvsep(&["tmtss", "--d", "0.1", "--r", "0.5", "--nbar", "0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("n = -0.0604"));

    let degenerate = cvsep(&["tmtss", "--d", "0.1", "--r", "0"]);
    assert_eq!(degenerate.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&degenerate.stderr).contains("singular"));
}

#[test]
fn hidden_oracle_command() {
    let v = json(&cvsep(&[
        "oracle", "--n1", "2", "--n2", "2", "--mc", "1.8", "--fock", "1", "1",
    ]));
    assert!(v["min_eig_physical"].as_f64().unwrap() > 0.0);
    assert!(v["min_eig_mirrored"].as_f64().unwrap() < 0.0);
    assert!((v["fock_overlap"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let help = String::from_utf8(cvsep(&["--help"]).stdout).unwrap();
    assert!(!help.contains("oracle"));
}
