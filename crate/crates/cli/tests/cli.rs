use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex-spectra"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let o = run(dir, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn tented_spectral_radius() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["gen", "tented", "--n", "6", "--r", "2", "-o", "t62.facets"]);
    let out = ok(dir.path(), &["spectra", "t62.facets", "--dim", "1"]);
    let value: f64 = out.lines().next().unwrap().parse().unwrap();
    assert!((value - 9.0).abs() < 1e-9, "{out}");
    assert!(out.contains("residual"));
    assert!(out.contains("iterations"));
}

#[test]
fn perron_vector_lines() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["gen", "tented", "--n", "5", "-o", "t5.facets"]);
    let out = ok(dir.path(), &["spectra", "t5.facets", "--dim", "1", "--perron"]);
    let faces: Vec<&str> = out.lines().filter(|l| l.starts_with('{')).collect();
    assert_eq!(faces.len(), 10);
    assert!(faces.iter().all(|l| l.split(' ').nth(1).unwrap().parse::<f64>().unwrap() > 0.0));
}

#[test]
fn sphere_betti_line() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["gen", "delta-sphere", "--r", "2", "-o", "d.facets"]);
    assert_eq!(ok(dir.path(), &["betti", "d.facets"]), "1 0 1  chi=2\n");
}

#[test]
fn facet_search_report() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["search", "--mode", "facets", "--n", "5", "--t", "1", "--full-skeleton", "-o", "r.json"]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["max_facets"], 7);
    assert_eq!(v["restricted_to_full_skeleton"], true);
    assert_eq!(v["bound_violations"].as_array().unwrap().len(), 0);
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["search", "--mode", "spectral", "--n", "5", "--t", "1"];
    let one = ok(dir.path(), &[&args[..], &["--workers", "1"]].concat());
    let three = ok(dir.path(), &[&args[..], &["--workers", "3"]].concat());
    assert_eq!(one, three);
    assert_eq!(one, ok(dir.path(), &[&args[..], &["--workers", "1"]].concat()));
}

#[test]
fn generated_families_round_trip_through_betti() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["simplex-skeleton", "--n", "6", "--r", "3"],
        &["tented", "--n", "9", "--r", "3"],
        &["tent-plus-common-edge", "--n", "7", "--t", "4"],
        &["tent-plus-faces", "--n", "7", "--added", "1,2,3;4,5,6"],
        &["delta-sphere", "--r", "4"],
        &["rhombic", "--r", "3"],
        &["random-pure2", "--n", "8", "--seed", "3"],
    ];
    for case in cases {
        ok(dir.path(), &[&["gen"][..], case, &["-o", "k.facets"]].concat());
        let line = ok(dir.path(), &["betti", "k.facets"]);
        assert!(line.contains("chi="), "{case:?}: {line}");
    }
}

#[test]
fn inspect_and_profile_tables() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["gen", "tent-plus-common-edge", "--n", "6", "--t", "1", "-o", "k.facets"]);
    let csv = ok(dir.path(), &["inspect", "k.facets"]);
    assert!(csv.starts_with("quantity,value\n"));
    assert!(csv.contains("\nA3,1\n"));
    assert!(csv.contains("\nM_u,1\n"));

    ok(dir.path(), &["gen", "tent-plus-common-edge", "--n", "30", "--t", "2", "-o", "big.facets"]);
    let profile = ok(dir.path(), &["inspect", "big.facets", "--profile"]);
    assert!(profile.starts_with("class,face,measured,predicted,relative_deviation\n"));
    assert_eq!(profile.lines().filter(|l| l.starts_with("mu_face")).count(), 2);
}

#[test]
fn asymptotic_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = ok(dir.path(), &["asymptotic", "--t", "2", "--n", "60,120"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "n,q1,excess,g,residual,iterations");
    assert_eq!(rows.len(), 3);
    let g: f64 = rows[2].split(',').nth(3).unwrap().parse().unwrap();
    assert!((g - 1.0).abs() < 0.3);
}

#[test]
fn acceptance_subset_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["acceptance", "--only", "1,9"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("acceptance_report.json")).unwrap()).unwrap();
    assert_eq!(report["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(dir.path(), args).status.code().unwrap();
    assert_eq!(code(&["search", "--mode", "facets", "--n", "7", "--t", "0"]), 2);
    assert_eq!(code(&["gen", "no-such-family", "--n", "4"]), 2);
    assert_eq!(code(&["betti", "missing.facets"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);

    std::fs::write(dir.path().join("bad.facets"), "n 4\n0 1 x\n").unwrap();
    let o = run(dir.path(), &["betti", "bad.facets"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E_PARSE"));

    // two triangles sharing only a vertex are not 1-path connected
    std::fs::write(dir.path().join("bow.facets"), "n 5\n0 1 2\n0 3 4\n").unwrap();
    let o = run(dir.path(), &["inspect", "bow.facets"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E_NOT_PATH_CONNECTED"));
}
