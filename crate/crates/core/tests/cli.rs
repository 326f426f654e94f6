use std::process::Command as Process;

use clap::Parser;
use multilevel::cli::{round_sig, run, Cli};
use serde_json::Value;

fn run_args(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("mlc").chain(args.iter().copied()))
        .expect("arguments parse");
    run(&cli).expect("command succeeds")
}

fn run_json(args: &[&str]) -> Value {
    serde_json::from_str(&run_args(args)).expect("valid JSON")
}

fn mlc() -> Process {
    Process::new(env!("CARGO_BIN_EXE_mlc"))
}

#[test]
fn construct_cstar_ex4_has_four_reps() {
    let v = run_json(&["construct", "--kind", "cstar", "--catalog", "ex4"]);
    assert_eq!(v["reps"].as_array().unwrap().len(), 4);
    assert_eq!(v["q"], 4);
    assert_eq!(v["source"], "cstar");
}

#[test]
fn construct_d7_plus() {
    let v = run_json(&[
        "construct",
        "--kind",
        "c",
        "--catalog",
        "dnplus",
        "--n",
        "7",
    ]);
    assert_eq!(v["n"], 7);
    // |rep| · |even| = 2 · 2⁶
    assert_eq!(v["reps"].as_array().unwrap().len(), 128);
}

#[test]
fn construct_a_of_full_space_is_integer_lattice() {
    let v = run_json(&["construct", "--kind", "a", "--catalog", "full", "--n", "3"]);
    assert_eq!(v["q"], 2);
    assert_eq!(v["reps"].as_array().unwrap().len(), 8);
}

#[test]
fn construct_writes_file_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex5.json");
    let v = run_json(&[
        "construct",
        "--catalog",
        "ex5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(v["command"], "construct");
    assert_eq!(v["result"]["reps"], 4);
    let check = run_json(&[
        "check",
        "--input",
        out.to_str().unwrap(),
        "--lattice",
        "brute",
    ]);
    assert_eq!(check["result"]["lattice"]["brute"]["verdict"], "lattice");
}

#[test]
fn check_all_on_ex9() {
    let v = run_json(&["check", "--lattice", "all", "--catalog", "ex9"]);
    let lat = &v["result"]["lattice"];
    assert_eq!(lat["thm4"]["verdict"], "inconclusive");
    assert_eq!(lat["thm5"]["verdict"], "lattice");
    assert_eq!(lat["brute"]["verdict"], "lattice");
    assert!(lat["thm1"]["error"].is_string());
}

#[test]
fn check_eds_on_ex2() {
    let v = run_json(&["check", "--eds", "--catalog", "ex2"]);
    let eds = &v["result"]["eds"];
    assert_eq!(eds["eds"], false);
    assert_eq!(eds["witness"]["richer"], serde_json::json!([1, 1]));
    assert_eq!(eds["witness"]["poorer"], serde_json::json!([3, 3]));
    assert_eq!(eds["witness"]["d2"], 2);
}

#[test]
fn check_brute_on_scaled_integer_lattice() {
    let v = run_json(&[
        "check",
        "--lattice",
        "brute",
        "--kind",
        "a",
        "--catalog",
        "zero",
        "--n",
        "3",
    ]);
    assert_eq!(v["result"]["lattice"]["brute"]["verdict"], "lattice");
}

#[test]
fn check_spectrum_and_equimin() {
    let v = run_json(&[
        "check",
        "--catalog",
        "ex2",
        "--spectrum",
        "1,1",
        "--radius",
        "4",
        "--equimin",
    ]);
    let entries = v["result"]["spectrum"]["entries"].as_array().unwrap();
    let at2 = entries.iter().find(|e| e["d2"] == 2).unwrap();
    assert_eq!(at2["count"], 2);
    assert!(v["result"]["equimin"]["holds"].is_boolean());
}

#[test]
fn table1_rows() {
    let v = run_json(&["table1", "--json"]);
    let rows = v["result"].as_array().unwrap();
    let row = |id: &str| rows.iter().find(|r| r["id"] == id).unwrap().clone();
    let ex4 = row("ex4");
    assert_eq!(ex4["recomputed"][0], 1.0);
    assert_eq!(ex4["recomputed"][1], 1.0);
    assert_eq!(ex4["recomputed"][2], 0.19635);
    assert_eq!(
        ex4["recomputed"][3],
        round_sig(std::f64::consts::FRAC_PI_8, 6)
    );
    let ex6 = row("ex6");
    assert_eq!(ex6["recomputed"][0], 32.0);
    assert_eq!(ex6["recomputed"][1], 16.0);
    assert!(ex6["mismatches"]
        .as_array()
        .unwrap()
        .contains(&"d2_c".into()));
    let ex10 = row("ex10");
    assert_eq!(ex10["recomputed"][2], 0.5);
    assert_eq!(ex10["recomputed"][3], 1.0);
    assert!(ex10["mismatches"].as_array().unwrap().is_empty());

    let text = run_args(&["table1"]);
    assert!(text.lines().next().unwrap().starts_with("example"));
    assert!(text.contains("16 [paper-table 24] *"));
}

fn optimum(csv: &str) -> (f64, f64) {
    let line = csv.lines().last().unwrap();
    let mut it = line
        .trim_start_matches("# optimum ")
        .split(' ')
        .map(|kv| kv.split('=').nth(1).unwrap().parse::<f64>().unwrap());
    (it.next().unwrap(), it.next().unwrap())
}

#[test]
fn gvb_default_and_coarse() {
    let fine = run_args(&["gvb"]);
    assert_eq!(fine.lines().next().unwrap(), "alpha1,rho,levels");
    let (a, r) = optimum(&fine);
    assert!((a - 0.195).abs() < 0.005);
    assert!((r - 0.4168).abs() < 5e-4);
    let (a2, _) = optimum(&run_args(&["gvb", "--step", "0.01"]));
    assert!((a - a2).abs() <= 0.01);
}

#[test]
fn gvb_curve_shape_past_optimum() {
    let csv = run_args(&["gvb"]);
    let (a_star, r_star) = optimum(&csv);
    let points: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1])
        })
        .filter(|&(a, _)| a > a_star + 1e-3)
        .collect();
    // falls to a shallow minimum near 0.425, then ½ ln α₁ outgrows the
    // entropy terms and the curve rises slightly up to α₁ = 0.5
    let (i_min, &(a_min, _)) = points
        .iter()
        .enumerate()
        .min_by(|x, y| x.1 .1.total_cmp(&y.1 .1))
        .unwrap();
    assert!((0.41..0.44).contains(&a_min), "{a_min}");
    assert!(points[..=i_min].windows(2).all(|w| w[1].1 <= w[0].1));
    assert!(points[i_min..].windows(2).all(|w| w[1].1 >= w[0].1));
    assert!(points.last().unwrap().1 < r_star);
}

#[test]
fn gvb_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gvb.csv");
    let v = run_json(&["gvb", "--out", out.to_str().unwrap()]);
    assert!(v["result"]["points"].as_u64().unwrap() > 400);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("alpha1,rho,levels\n"));
}

#[test]
fn leech_report() {
    let v = run_json(&["leech"]);
    let r = &v["result"];
    assert_eq!(r["verdict"], "lattice");
    assert_eq!(r["dmin2"], 32);
    assert!((r["packing"]["rho"].as_f64().unwrap() - 0.7707).abs() < 5e-4);
    let chain = r["chain"].as_array().unwrap();
    let names: Vec<&str> = chain
        .iter()
        .map(|l| l["subset"].as_str().unwrap())
        .chain(std::iter::once(
            chain.last().unwrap()["superset"].as_str().unwrap(),
        ))
        .collect();
    assert_eq!(names, ["C1", "S2(0)", "C2", "S3(0)", "C3"]);
}

#[test]
fn ensemble_is_byte_identical_for_a_seed() {
    let args = [
        "ensemble",
        "--seed",
        "7",
        "--trials",
        "20000",
        "--dmin-trials",
        "50",
    ];
    let a = run_args(&args);
    assert_eq!(a, run_args(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 7);
    assert!(v["elapsed_ms"].is_null());
    assert_eq!(
        v["result"]["conditions"]["construction_c"]["dependent"],
        true
    );
}

#[test]
fn export_round_trips_through_code_files() {
    let text = run_args(&["export", "--catalog", "ex4"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ex4.code");
    std::fs::write(&path, text).unwrap();
    let from_file = run_json(&[
        "construct",
        "--kind",
        "cstar",
        "--code",
        path.to_str().unwrap(),
        "--L",
        "2",
    ]);
    let from_catalog = run_json(&["construct", "--kind", "cstar", "--catalog", "ex4"]);
    assert_eq!(from_file, from_catalog);
}

#[test]
fn binary_exits_zero_on_negative_verdict() {
    let out = mlc()
        .args([
            "check",
            "--lattice",
            "thm1",
            "--catalog",
            "dnplus",
            "--n",
            "7",
        ])
        .env("MLC_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["lattice"]["thm1"]["verdict"], "not_lattice");
}

#[test]
fn binary_reports_parse_errors_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.code");
    std::fs::write(&path, "3 *\n0 0 0\n1 2 1\n").unwrap();
    let out = mlc()
        .args([
            "check",
            "--lattice",
            "brute",
            "--code",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn binary_timing_flag_fills_elapsed() {
    let out = mlc().args(["--timing", "leech"]).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}
