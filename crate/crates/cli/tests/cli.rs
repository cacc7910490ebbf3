//! End-to-end tests of the command-line interface: output shapes, byte
//! determinism and exit codes.

use std::process::Command;

fn uqm() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uqm"))
}

fn run(args: &[&str]) -> (String, String, Option<i32>) {
    let out = uqm().args(args).output().expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
        out.status.code(),
    )
}

#[test]
fn idp_json_output() {
    let (stdout, _, code) = run(&["usd", "idp", "--lambda", "0.5", "--eta1", "0.5"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["P_D"], 0.5);
    assert_eq!(v["regime"], "povm");
    assert_eq!(v["povm_valid"], true);
    assert!(v["meta"]["seed"].is_number());
    assert!(v["meta"]["tolerance"].is_number());
}

#[test]
fn figure_csv_shape_and_determinism() {
    let args = ["figure", "4.8", "--range", "0:3:0.05"];
    let (first, _, code) = run(&args);
    assert_eq!(code, Some(0));
    let (second, _, _) = run(&args);
    assert_eq!(first, second, "figure output must be byte identical");

    let mut lines = first.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("delta"));
    assert!(header.contains("P_sb"));
    assert!(header.contains("P_opt"));
    assert!(header.contains("P_bs"));
    assert!(header.contains("P_known"));
    assert_eq!(first.lines().count(), 62); // header + 61 grid points

    // ordering P_sb <= P_opt <= P_bs holds in the emitted data
    for line in first.lines().skip(1) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(cells[1] <= cells[2] + 1e-12);
        assert!(cells[2] <= cells[3] + 1e-9);
    }
}

#[test]
fn figure_rounds_parameter() {
    let (stdout, _, code) = run(&["figure", "4.15", "--rounds", "1,20,40,60,80"]);
    assert_eq!(code, Some(0));
    let header = stdout.lines().next().unwrap();
    for r in ["P_round_1", "P_round_20", "P_round_80"] {
        assert!(header.contains(r), "missing column {r}");
    }
}

#[test]
fn seeded_outputs_are_reproducible() {
    let args = ["channels", "compare", "--d", "2", "--samples", "2000", "--seed", "7"];
    let (a, _, _) = run(&args);
    let (b, _, _) = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["average_success"], 0.75);
    let est = v["mc_estimate"].as_f64().unwrap();
    assert!((est - 0.75).abs() < 0.02);
}

#[test]
fn acceptance_suite_exit_codes() {
    let (stdout, _, code) = run(&["acceptance", "usd", "--seed", "42"]);
    assert_eq!(code, Some(0));
    assert!(stdout.contains("PASS"));

    let (_, stderr, code) = run(&["acceptance", "unknown-suite"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("usage error"));
}

#[test]
fn error_exit_codes() {
    // unknown subcommand: clap usage error
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, Some(2));
    // unknown figure id
    let (_, stderr, code) = run(&["figure", "9.99"]);
    assert_eq!(code, Some(2));
    assert!(stderr.contains("unknown figure id"));
    // numeric failure: identical states
    let (_, stderr, code) = run(&["usd", "idp", "--lambda", "1.0", "--eta1", "0.5"]);
    assert_eq!(code, Some(3));
    assert!(stderr.contains("numeric failure"));
}

#[test]
fn tolerance_env_var_lands_in_meta() {
    let out = uqm()
        .args(["usd", "idp", "--lambda", "0.3", "--eta1", "0.5"])
        .env("UQM_TOL", "1e-7")
        .output()
        .unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(v["meta"]["tolerance"], 1e-7);
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join("uqm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.csv");
    let (_, _, code) = run(&[
        "figure",
        "4.17",
        "--sigma",
        "0.25",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("xi"));
    assert!(content.contains("R_sigma_0.25"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn meas_commands() {
    let (stdout, _, code) = run(&["meas", "compare-unlabeled", "--theta", "0.7853981633974483"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let p = v["p_success"].as_f64().unwrap();
    assert!((p - 2.0 / 3.0).abs() < 1e-10);
    let dense = v["p_success_dense"].as_f64().unwrap();
    assert!((p - dense).abs() < 1e-10);

    let (stdout, _, code) = run(&["meas", "audit-subspaces"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["passes"], true);
    assert_eq!(v["dim_totally_symmetric"], 5);

    let (stdout, _, code) = run(&["meas", "compare-labeled", "--d", "3", "--samples", "2000"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let avg = v["average_success"].as_f64().unwrap();
    assert!((avg - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn channels_fidelity_with_phases() {
    let (stdout, _, code) = run(&[
        "channels",
        "fidelity",
        "--phases",
        "1.0471975511965976,-1.0471975511965976",
        "--eta-u",
        "0.9",
    ]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    // phases ±π/3: F = cos(π/3) = 1/2, unbalanced branch: 0.9 · 3/4
    assert!((v["fidelity"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["P_success"].as_f64().unwrap() - 0.675).abs() < 1e-12);
}

#[test]
fn csv_format_for_scalar_commands() {
    let (stdout, _, code) = run(&[
        "usd",
        "idp",
        "--lambda",
        "0.5",
        "--eta1",
        "0.5",
        "--format",
        "csv",
    ]);
    assert_eq!(code, Some(0));
    let mut lines = stdout.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("P_D,regime"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("5.00000000000e-1,povm"));
}
