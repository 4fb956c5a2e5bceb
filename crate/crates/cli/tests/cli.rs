use std::path::Path;
use std::process::{Command, Output};

use bandwidth_core::graph::{bandwidth_of_labeling, load_matrix_market, Labeling};

fn bandwidth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bandwidth")).args(args).output().expect("binary runs")
}

fn gen(dir: &Path, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(format!("{}.mtx", args.join("_")));
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = bandwidth(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn reports(out: &Output) -> Vec<serde_json::Value> {
    serde_json::from_slice(&out.stdout).expect("json array")
}

#[test]
fn gen_torus_7() {
    let dir = tempfile::tempdir().unwrap();
    let g = load_matrix_market(gen(dir.path(), &["torus", "7"])).unwrap();
    assert_eq!((g.n(), g.edge_count()), (49, 98));
}

#[test]
fn gen_hypercube_5() {
    let dir = tempfile::tempdir().unwrap();
    let g = load_matrix_market(gen(dir.path(), &["hypercube", "5"])).unwrap();
    assert_eq!((g.n(), g.edge_count()), (32, 80));
}

#[test]
fn gen_torus_ham_6_has_small_identity_bandwidth() {
    let dir = tempfile::tempdir().unwrap();
    let g = load_matrix_market(gen(dir.path(), &["torus-ham", "6"])).unwrap();
    assert_eq!(g.n(), 36);
    assert!(bandwidth_of_labeling(&g, &Labeling::identity(36)) <= 12);
}

#[test]
fn unknown_family_is_fatal() {
    let out = bandwidth(&["gen", "moebius", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("torus"));
}

#[test]
fn edgeless_graph_gets_zero_bounds_and_a_partition_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.mtx");
    std::fs::write(&path, "%%MatrixMarket matrix coordinate pattern symmetric\n6 6 0\n").unwrap();
    let out = bandwidth(&["bound", path.to_str().unwrap(), "--spec", "2,2,2"]);
    assert!(out.status.success());
    let r = &reports(&out)[0];
    assert_eq!(r["ub"], 0);
    assert_eq!(r["lb"], 0.0);
    assert!(r["lower_bound"].is_null());
    assert_eq!(r["upper_bound"]["kind"], "upper");
    assert_eq!(r["upper_bound"]["value"], 3);
    assert_eq!(r["upper_bound"]["certificate"]["type"], "partition");
}

#[test]
fn infeasible_spec_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), &["torus", "4"]);
    let out = bandwidth(&["bound", path.to_str().unwrap(), "--spec", "5,5,5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), &["torus", "4"]);
    let p = path.to_str().unwrap();
    for format in ["json", "csv"] {
        let run = || bandwidth(&["bound", p, "--spec", "5,3,3,5", "--seed", "3", "--output", format]);
        let (a, b) = (run(), run());
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn certify_rechecks_reported_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), &["torus", "5"]);
    let p = path.to_str().unwrap();
    let out = bandwidth(&["heuristic", p, "--labeler", "rcm"]);
    assert!(out.status.success());
    let report = dir.path().join("h.json");
    std::fs::write(&report, &out.stdout).unwrap();
    let check = bandwidth(&["certify", p, report.to_str().unwrap()]);
    assert!(check.status.success(), "{}", String::from_utf8_lossy(&check.stdout));

    // A forged claim one below the labeling's width is rejected.
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let width = v["width"].as_u64().unwrap();
    v["upper_bound"]["value"] = (width - 1).into();
    std::fs::write(&report, serde_json::to_vec(&v).unwrap()).unwrap();
    let check = bandwidth(&["certify", p, report.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(2));
}

#[test]
fn torus_7_first_row_certifies_bandwidth_at_least_9() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), &["torus", "7"]);
    let out = bandwidth(&["bound", path.to_str().unwrap(), "--spec", "16,8,8,17"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &reports(&out)[0];
    assert!(r["ub"].as_u64().unwrap() <= 6);
    let lb = r["lb"].as_f64().unwrap();
    assert!(lb > 0.5, "lb = {lb}");
    assert_eq!(r["lower_bound"]["value"], 9);
    assert_eq!(r["lower_bound"]["safe"], true);
}

#[test]
fn torus_7_second_row_gives_no_bandwidth_claim() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), &["torus", "7"]);
    let out = bandwidth(&["bound", path.to_str().unwrap(), "--spec", "15,9,9,16"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &reports(&out)[0];
    assert!(r["lower_bound"].is_null(), "certified lb = {}", r["lb"]);
}
