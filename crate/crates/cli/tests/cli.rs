use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagstar")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn gallery_lists_all_entries() {
    let o = run(&["gallery"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.contains("cmc-lemniscate"));
}

#[test]
fn gallery_spec_round_trips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["gallery", "cylinder", "--param", "R=2", "--out", d]);
    assert_eq!(code(&o), 0);
    let path = dir.path().join("cylinder.json");
    let spec: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(spec["omega"]["params"]["radius"], 2.0);
    assert_eq!(spec["expect"]["shrinker"], false);

    let o = run(&["classify", path.to_str().unwrap(), "--grid", "31x31"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn classify_cylinder_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify", "cylinder", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("cylinder_report.json")).unwrap()).unwrap();
    let rec = |n: &str| {
        report["records"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"] == n)
            .unwrap()
            .clone()
    };
    assert_eq!(rec("pmc")["pass"], true);
    assert_eq!(rec("hsl")["pass"], true);
    assert_eq!(rec("cmc")["pass"], true);
    assert!((rec("cmc")["details"]["rho"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(rec("special")["pass"], false);
}

#[test]
fn failing_check_exits_one() {
    let o = run(&["classify", "cylinder", "--checks", "expander", "--grid", "21x21"]);
    assert_eq!(code(&o), 1);
    assert!(!o.stdout.is_empty(), "report is still printed");
    let o = run(&["classify", "cylinder", "--checks", "special", "--grid", "21x21"]);
    assert_eq!(code(&o), 0, "expected failure matches the entry's expectation");
}

#[test]
fn verify_special_passes() {
    let o = run(&["verify", "special", "--param", "a=1", "--param", "b=2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("mean_curvature"));
    assert!(!text.contains("fail"));
}

#[test]
fn verify_with_seed_is_deterministic() {
    let a = run(&["verify", "hsl-cornu", "--seed", "11", "--samples", "16"]);
    let b = run(&["verify", "hsl-cornu", "--seed", "11", "--samples", "16"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn mesh_all_projections() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "mesh",
        "torus-gerono-lissajous",
        "--project",
        "all",
        "--grid",
        "41x41",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let objs: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "obj"))
        .collect();
    assert_eq!(objs.len(), 4);
    let text = fs::read_to_string(dir.path().join("torus-gerono-lissajous_drop2.obj")).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 41 * 41);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 41 * 41);
}

#[test]
fn mesh_csv_and_ply() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "mesh",
        "plane",
        "--format",
        "csv,ply",
        "--project",
        "1",
        "--grid",
        "5x5",
        "--trange=-1:1",
        "--srange",
        "-1:1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("plane.csv")).unwrap();
    assert_eq!(csv.lines().count(), 26);
    assert!(dir.path().join("plane_drop1.ply").is_file());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["classify", "no-such-surface"])), 2);
    assert_eq!(code(&run(&["classify", "cylinder", "--grid", "ten"])), 2);
    assert_eq!(code(&run(&["classify", "cylinder", "--param", "Q=1"])), 2);
    assert_eq!(code(&run(&["classify", "cylinder", "--checks", "bogus"])), 2);
    assert_eq!(code(&run(&["mesh", "plane", "--format", "stl"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"alpha\": 3}").unwrap();
    assert_eq!(code(&run(&["build", bad.to_str().unwrap()])), 2);
}

#[test]
fn numeric_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("cmc.json");
    let text = r#"{
        "alpha": {"kind": "cmc-radial", "params": {"rho": 2, "lambda": 0.5, "mu": 0.3, "r_init": 0.9}, "domain": [0, 20]},
        "omega": {"kind": "line", "domain": [-1, 1]},
        "grid": {"nt": 11, "ns": 11, "t_range": [0, 1], "s_range": [-1, 1]}
    }"#;
    fs::write(&spec, text).unwrap();
    let o = run(&["build", spec.to_str().unwrap()]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn build_summary() {
    let o = run(&["build", "cmc-lemniscate", "--grid", "21x21"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["alpha"]["kind"], "lemniscate");
    assert!(v["masked_nodes"].as_u64().unwrap() > 0);
    assert!(v["max_lagrangian_residual"].as_f64().unwrap() < 1e-10);
}
