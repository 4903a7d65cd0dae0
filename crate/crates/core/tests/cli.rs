use std::process::{Command, Output};

use closure_core::model::{build_weight_matrix, WeightKind, WeightMatrix, WeightSpec};
use serde_json::Value;

fn closure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_closure"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = closure(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn theory_prints_both_components() {
    let v = json(&["theory", "--er", "-n", "4", "--p", "0.5"]);
    assert_eq!(v["sigma1_sq"].as_f64().unwrap(), 0.0277777777778);
    assert_eq!(v["sigma2_sq"].as_f64().unwrap(), 0.0185185185185);
    assert_eq!(v["sigma_sq"].as_f64().unwrap(), 0.0462962962963);
    assert_eq!(v["config"]["p"].as_f64().unwrap(), 0.5);
}

#[test]
fn enum_prints_exact_moments() {
    let v = json(&["enum", "-n", "3", "--p", "0.5"]);
    assert_eq!(v["mean"].as_f64().unwrap(), 0.125);
    assert_eq!(v["variance"].as_f64().unwrap(), 0.109375);
    assert_eq!(v["graphs"].as_u64().unwrap(), 8);
}

#[test]
fn domain_errors_exit_one_and_name_the_flag() {
    let out = closure(&["mc", "--er", "-n", "0", "--alpha", "0.5", "-m", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("-n"));

    let out = closure(&["sample", "-n", "10", "--alpha", "0.5", "--weights", "uniform", "--beta", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--beta"));

    let out = closure(&["mc", "--er", "-n", "10", "--alpha", "0.5", "-m", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--replicates"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(closure(&["bogus"]).status.code(), Some(2));
    assert_eq!(closure(&["theory", "-n", "5", "--alpha", "0.5", "--p", "0.2"]).status.code(), Some(2));
    assert_eq!(closure(&["--help"]).status.code(), Some(0));
}

#[test]
fn emitted_weights_reload_bit_identically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let p = path.to_str().unwrap();
    let args = [
        "sample", "-n", "25", "--alpha", "0.3", "--weights", "uniform", "--beta", "0.3", "--weight-seed", "7",
        "--emit-weights", p,
    ];
    json(&args);
    let reloaded = WeightMatrix::read_from(&path).unwrap();
    let original = build_weight_matrix(&WeightSpec {
        n: 25,
        beta: 0.3,
        kind: WeightKind::UniformRandom { seed: 7 },
    })
    .unwrap();
    assert_eq!(reloaded.as_array(), original.as_array());

    let from_file = json(&["theory", "--weights-file", p, "--alpha", "0.3"]);
    let generated = json(&["theory", "-n", "25", "--alpha", "0.3", "--weights", "uniform", "--beta", "0.3", "--weight-seed", "7"]);
    assert_eq!(from_file["sigma_sq"], generated["sigma_sq"]);
}

#[test]
fn stats_reads_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("diamond.txt");
    std::fs::write(&path, "4\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let v = json(&["stats", "--graph", path.to_str().unwrap()]);
    assert_eq!(v["hbar"].as_f64().unwrap(), 0.75);
    assert_eq!(v["cbar"].as_f64().unwrap(), 0.833333333333);
    assert_eq!(v["triangles"].as_u64().unwrap(), 2);
}

#[test]
fn sampled_edge_list_feeds_stats() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    json(&["sample", "-n", "40", "--alpha", "0.4", "--seed", "9", "--edges", p]);
    let from_file = json(&["stats", "--graph", p]);
    let direct = json(&["stats", "-n", "40", "--alpha", "0.4", "--seed", "9"]);
    assert_eq!(from_file["hbar"], direct["hbar"]);
    assert_eq!(from_file["closed_wedges"], direct["closed_wedges"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands: [&[&str]; 6] = [
        &["sample", "-n", "30", "--alpha", "0.5", "--seed", "3"],
        &["stats", "-n", "30", "--alpha", "0.5", "--seed", "3"],
        &["theory", "-n", "30", "--alpha", "0.5", "--weights", "two-block", "--within", "1", "--cross", "0.4"],
        &["mc", "-n", "30", "--alpha", "0.5", "-m", "50", "--leading-terms", "--clustering"],
        &["enum", "-n", "4", "--alpha", "0.5"],
        &["sweep", "--n-list", "50,100", "--alpha-list", "0.3,0.7", "-m", "20"],
    ];
    for args in commands {
        let a = closure(args);
        let b = closure(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sweep_writes_csv() {
    let out = closure(&["sweep", "--n-list", "100,1000", "--alpha-list", "0.2,0.5,0.8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# "));
    assert!(lines.next().unwrap().starts_with("n,alpha,p,sigma1_sq"));
    assert_eq!(lines.count(), 6);
}
