use std::path::PathBuf;
use std::process::{Command, Output};

use ohcp_core::io::{parse_chain, parse_complex};
use serde_json::Value;

fn path_in(dir: &str, name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(dir).join(name);
    p.to_str().unwrap().to_string()
}

fn data(name: &str) -> String {
    path_in("tests/data", name)
}

fn core_fixture(name: &str) -> String {
    path_in("../core/fixtures", name)
}

fn ohcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohcp")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn moebius_strip_is_not_tu_with_det_minus_two() {
    let out = ohcp(&["tu", "--complex", &data("moebius.scx"), "--dim", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "NotTU");
    assert_eq!(v["witness_det"], -2);
}

#[test]
fn appendix_matrix_has_trivial_invariant_factors() {
    let out = ohcp(&["snf", "--matrix", &core_fixture("moebius_b2.mat")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1 1 1 1 1 1");
}

#[test]
fn appendix_matrices_are_not_tu() {
    for name in ["moebius_b2.mat", "prjctvpln_b2.mat"] {
        let v = json(&ohcp(&["tu", "--matrix", &core_fixture(name), "--method", "minors"]));
        assert_eq!(v["status"], "NotTU");
        assert_eq!(v["witness_det"].as_i64().unwrap().abs(), 2);
    }
}

#[test]
fn zero_chain_has_zero_objective() {
    let out = ohcp(&[
        "solve",
        "--complex",
        &data("moebius.scx"),
        "--chain",
        &data("moebius_zero.chn"),
        "--dim",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["objective"], "0/1");
    assert_eq!(v["integral"], true);
}

#[test]
fn hourglass_solution_round_trips_and_matches_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out_base = dir.path().join("sol");
    let args = |cmd: &'static str| {
        vec![
            cmd.to_string(),
            "--complex".into(),
            data("hourglass.scx"),
            "--chain".into(),
            data("hourglass.chn"),
            "--dim".into(),
            "1".into(),
            "--weights".into(),
            data("hourglass.wts"),
        ]
    };
    let mut solve_args = args("solve");
    solve_args.extend(["--out".into(), out_base.to_str().unwrap().into()]);
    let solve_args: Vec<&str> = solve_args.iter().map(String::as_str).collect();
    let out = ohcp(&solve_args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = json(&out);
    assert_eq!(summary["objective"], "6/1");

    let written: Value = serde_json::from_str(&std::fs::read_to_string(out_base.with_extension("json")).unwrap()).unwrap();
    assert_eq!(written, summary);
    let chain_text = std::fs::read_to_string(out_base.with_extension("chn")).unwrap();
    let k = parse_complex(&std::fs::read_to_string(data("hourglass.scx")).unwrap()).unwrap();
    let chain = parse_chain(&chain_text, &k, 1).unwrap();
    assert!(chain.iter().all(|(_, c)| c.magnitude().to_string() == "2"));
    assert_eq!(ohcp_core::io::write_chain(&k, &chain), chain_text);

    let mut oracle_args = args("oracle");
    oracle_args.extend(["--y-bound".into(), "1".into()]);
    let oracle_args: Vec<&str> = oracle_args.iter().map(String::as_str).collect();
    assert_eq!(json(&ohcp(&oracle_args))["objective"], "6/1");
}

#[test]
fn output_is_byte_identical_across_runs() {
    let runs = [
        ("torsion-scan", data("projective_plane.scx"), "1"),
        ("tu", data("w7.scx"), "2"),
        ("boundary", data("torus.scx"), "2"),
    ];
    for (cmd, complex, dim) in &runs {
        let argv = [*cmd, "--complex", complex, "--dim", dim];
        let a = ohcp(&argv);
        let b = ohcp(&argv);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn torsion_scan_reports_a_relative_two_torsion() {
    let v = json(&ohcp(&["torsion-scan", "--complex", &data("projective_plane.scx"), "--dim", "1"]));
    assert_eq!(v["torsion_witness"]["torsion_coefficient"], 2);
    let v = json(&ohcp(&["torsion-scan", "--complex", &data("torus.scx"), "--dim", "1"]));
    assert_eq!(v["status"], "TU");
    assert!(v["torsion_witness"].is_null());
}

#[test]
fn w7_has_no_mobius_subcomplex() {
    let v = json(&ohcp(&["mobius-scan", "--complex", &data("w7.scx"), "--dim", "3"]));
    assert_eq!(v["found"], false);
    let v = json(&ohcp(&["mobius-scan", "--complex", &data("moebius.scx"), "--dim", "2"]));
    assert_eq!(v["found"], true);
    assert_eq!(v["simplices"].as_array().unwrap().len(), 6);
}

#[test]
fn homology_of_the_projective_plane() {
    let v = json(&ohcp(&["homology", "--complex", &data("projective_plane.scx"), "--dim", "1"]));
    assert_eq!(v, serde_json::json!({"betti": 0, "torsion": [2]}));
}

#[test]
fn coordinates_give_euclidean_weights() {
    // 3-4-5 triangle: the boundary costs 12, filling it costs the y-weight 1.
    let out = ohcp(&[
        "solve",
        "--complex",
        &data("triangle.scx"),
        "--chain",
        &data("triangle.chn"),
        "--dim",
        "1",
        "--coords",
        &data("triangle.xyz"),
        "--variant",
        "total",
        "--y-weights",
        &data("moebius_zero.chn"),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["objective"], "1/1");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scx");
    std::fs::write(&bad, "0 1 x\n").unwrap();
    assert_eq!(ohcp(&["homology", "--complex", bad.to_str().unwrap(), "--dim", "0"]).status.code(), Some(4));

    let undecided = ohcp(&["tu", "--complex", &data("torus.scx"), "--dim", "1", "--method", "minors"]);
    assert_eq!(undecided.status.code(), Some(5));
    assert!(!undecided.stderr.is_empty());

    let budget = ohcp(&["mobius-scan", "--complex", &data("torus.scx"), "--dim", "2", "--budget", "2"]);
    assert_eq!(budget.status.code(), Some(5));

    let missing = ohcp(&["homology", "--complex", "/nonexistent.scx", "--dim", "0"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn fractional_optimum_exits_three_and_writes_only_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out_base = dir.path().join("frac");
    let out = ohcp(&[
        "solve",
        "--complex",
        &data("moebius.scx"),
        "--chain",
        &data("moebius_fractional.chn"),
        "--weights",
        &data("moebius_fractional.wts"),
        "--dim",
        "1",
        "--out",
        out_base.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["objective"], "9/2");
    assert_eq!(v["integral"], false);
    assert!(v["torsion_note"].is_string());
    assert!(out_base.with_extension("json").exists());
    assert!(!out_base.with_extension("chn").exists());
}
