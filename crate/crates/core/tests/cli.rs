use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn qldpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qldpc")).args(args).output().unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn build(dir: &Path, family: &str, cfg: &str, name: &str) -> PathBuf {
    let out = dir.join(name);
    let o = qldpc(&[
        "build",
        "--family",
        family,
        "--config",
        config(cfg).to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn build_and_validate_coset() {
    let dir = tempfile::tempdir().unwrap();
    let qpc = build(dir.path(), "coset", "coset_psl2_5.toml", "c.qpc");
    let text = std::fs::read_to_string(&qpc).unwrap();
    assert!(text.starts_with("QPC v1 n=3600 m=1800\n"));
    let o = qldpc(&["validate", qpc.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    for line in ["orthogonality violations = 0", "regular = (6,12)", "k = 1800", "min degree 9"] {
        assert!(s.contains(line), "missing {line:?} in\n{s}");
    }
}

#[test]
fn build_cayley_with_cycle_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.qpc");
    let cycles = dir.path().join("cycles.txt");
    let o = qldpc(&[
        "build",
        "--family",
        "cayley",
        "--config",
        config("cayley_p13_alt.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--dump-cycles",
        cycles.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&cycles).unwrap().lines().count(), 4368);
    let s = stdout(&qldpc(&["validate", out.to_str().unwrap()]));
    assert!(s.contains("k = 4370"));
    assert!(s.contains("dependencies = 2"));
    assert!(s.contains("min degree 4, max degree 4"));
    assert!(s.contains("omega-cycle witness weight = "));
}

#[test]
fn printed_cayley_config_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.qpc");
    let o = qldpc(&[
        "build",
        "--family",
        "cayley",
        "--config",
        config("cayley_p13.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("|S| = 4: FAIL"));
    assert!(!out.exists());
}

#[test]
fn simulate_and_sweep_emit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let qpc = build(dir.path(), "coset", "coset_psl2_5.toml", "c.qpc");
    let q = qpc.to_str().unwrap();
    let o = qldpc(&["simulate", q, "--p", "0.02", "--trials", "20", "--seed", "5", "--workers", "2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(
        lines.next(),
        Some("channel_p,trials,successes,logical_errors,detected_failures,bler,ci_low,ci_high,master_seed")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 9);
    assert_eq!(row[0], "0.02");
    assert_eq!(row[1], "20");
    assert_eq!(row[8], "5");

    let csv = dir.path().join("sweep.csv");
    let args = [
        "sweep", q, "--p-list", "0.01,0.03", "--trials", "10", "--seed", "5", "--algo", "sum_product",
        "--max-iter", "30", "--workers", "1", "--out",
    ];
    let mut a = args.to_vec();
    a.push(csv.to_str().unwrap());
    assert!(qldpc(&a).status.success());
    let first = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(first.lines().count(), 3);
    assert!(qldpc(&a).status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), first);
}

#[test]
fn bad_arguments() {
    let dir = tempfile::tempdir().unwrap();
    let qpc = build(dir.path(), "coset", "coset_psl2_5.toml", "c.qpc");
    let q = qpc.to_str().unwrap();
    let o = qldpc(&["sweep", q, "--p-list", "0.03,0.01", "--trials", "1", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qldpc(&["simulate", q, "--p", "0.8", "--trials", "1", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qldpc(&["simulate", q, "--p", "0.1", "--trials", "1", "--seed", "0", "--algo", "bp"]);
    assert!(!o.status.success());
    let o = qldpc(&["validate", dir.path().join("missing.qpc").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = qldpc(&["build", "--family", "torus", "--config", "x", "--out", "y"]);
    assert!(!o.status.success());
}

#[test]
fn validate_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qpc");
    std::fs::write(&bad, "QPC v1 n=1 m=2\n0w\n0W\n").unwrap();
    let o = qldpc(&["validate", bad.to_str().unwrap(), "--no-witness"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("orthogonality violations = 1"));
}
