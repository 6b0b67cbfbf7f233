//! End-to-end CLI checks through the built binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catalan-torsion"))
}

#[test]
fn split_table_csv_matches_published_rows() {
    let out = bin()
        .args(["split-table", "--q", "3", "--p", "5,7,11,13", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "p,q,Q,level,eta_witness_i,eta_witness_j");
    assert!(rows[1].starts_with("5,3,16,2"));
    assert!(rows[2].starts_with("7,3,169,2"));
    assert!(rows[3].starts_with("11,3,1849,2"));
    assert!(rows[4].starts_with("13,3,547,2"));
}

#[test]
fn audit_2_15_exits_zero_with_empty_offenders() {
    let out = bin()
        .args(["audit", "--n", "2", "--d", "15"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let audit = &v["report"]["audit"];
    assert_eq!(audit["offenders"].as_array().unwrap().len(), 0);
    assert_eq!(audit["N"], 30);
    assert_eq!(audit["ell"], 54001);
}

#[test]
fn jacobi_pointcount_exit_codes() {
    let ok = bin()
        .args(["jacobi-pointcount", "--p", "3", "--q", "5", "--ell", "16"])
        .output()
        .unwrap();
    assert!(ok.status.success());
    // Bad field (Q not 1 mod pq) is an execution error: exit 1.
    let bad = bin()
        .args(["jacobi-pointcount", "--p", "3", "--q", "5", "--ell", "17"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_error_is_64() {
    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn determinism_of_json_output() {
    let run = |seed: &str| {
        let out = bin()
            .args(["audit", "--n", "4", "--d", "5", "--seed", seed])
            .output()
            .unwrap();
        assert!(out.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let audit = v["report"]["audit"].as_object_mut().unwrap();
        audit.remove("seed");
        audit.remove("runtime_ms");
        v
    };
    assert_eq!(run("1"), run("999"));
}

#[test]
fn certify_commands_pass() {
    let out = bin().args(["certify-c43"]).output().unwrap();
    assert!(out.status.success());
    let out = bin().args(["certify-c25"]).output().unwrap();
    assert!(out.status.success());
}

#[test]
fn cs_check_and_gaps() {
    let out = bin()
        .args(["cs-check", "--n", "3", "--d", "4", "--d1", "2", "--d2", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["inequality_holds"], false);
    let out = bin().args(["gaps", "--gens", "2,5"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["semigroup"]["genus"], 2);
    assert_eq!(v["report"]["semigroup"]["weight"], 1);
}

#[test]
fn residual_test_families() {
    let out = bin()
        .args(["residual-test", "--n", "3", "--d", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["forces_origin"], true);
    assert_eq!(v["report"]["v_at_origin_is_one"], true);
    let out = bin()
        .args(["residual-test", "--n", "2", "--d", "5", "--family", "xdx"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn descent_scan_runs() {
    let out = bin()
        .args(["descent-scan", "--n", "3", "--d", "5", "--ell", "31"])
        .output()
        .unwrap();
    assert!(out.status.success());
}
