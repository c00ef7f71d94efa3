use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn edd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edd")).args(args).output().expect("run edd")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_exact_and_nste() {
    let out = edd(&["solve", "--algo", "exact", "--instance", &fixture("ten_servers.edd")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("total 219\nc2e 200\ne2e 19\ntime_s "));

    let out = edd(&["solve", "--algo", "nste", "--instance", &fixture("ten_servers.edd")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("total 228\n"));
}

#[test]
fn solve_json_and_solution_file() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("plan.sol");
    let out = edd(&["solve", "--algo", "exact", "--instance", &fixture("ten_servers.edd"), "--json", "--out", p(&sol)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["total"], 219);
    assert_eq!(v["transits"], serde_json::json!([2, 7]));
    let text = std::fs::read_to_string(&sol).unwrap();
    assert!(text.starts_with("total 219\nc2e 200\ne2e 19\nC 2\nC 7\n"));
}

#[test]
fn random_is_repeatable() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.sol"), dir.path().join("b.sol"));
    for path in [&a, &b] {
        let out = edd(&["solve", "--algo", "random", "--seed", "7", "--instance", &fixture("ten_servers.edd"), "--out", p(path)]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn user_errors_exit_with_two() {
    let out = edd(&["solve", "--algo", "magic", "--instance", &fixture("ten_servers.edd")]);
    assert_eq!(out.status.code(), Some(2));
    let out = edd(&["solve", "--algo", "nste", "--instance", "/nonexistent/file.edd"]);
    assert_eq!(out.status.code(), Some(2));
    let out = edd(&["gen", "--nodes", "10", "--gamma", "100", "--llimit", "110"]);
    assert_eq!(out.status.code(), Some(2), "missing --out");
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("x.edd");
    let out = edd(&["gen", "--nodes", "10", "--delta", "0.5", "--gamma", "100", "--llimit", "110", "--out", p(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("connectivity floor"));
}

#[test]
fn gen_shape_and_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.edd");
    let args = ["gen", "--nodes", "10", "--delta", "1.4", "--rho", "0.7", "--gamma", "100", "--llimit", "110"];
    let out = edd(&[&args[..], &["--seed", "3", "--out", p(&f)]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("nodes 10 edges 14 destinations 7 gamma 100 llimit 110"));
    let inst = edd::format::load_instance(&f).unwrap();
    assert!(inst.network().edges().iter().all(|e| (1..=50).contains(&e.w)));

    let out = edd(&["gen", "--nodes", "12", "--edges", "20", "--dest", "4", "--gamma", "9", "--llimit", "12", "--out", p(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("nodes 12 edges 20 destinations 4"));
}

#[test]
fn gen_from_data() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.edd");
    let out = edd(&["gen", "--edgelist", &fixture("triangle.txt"), "--dest", "2", "--gamma", "10", "--llimit", "12", "--out", p(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("nodes 3 edges 3 destinations 2"));

    let out = edd(&["gen", "--eua", &fixture("eua_stations.csv"), "--nodes", "25", "--gamma", "10", "--llimit", "12", "--out", p(&f)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("nodes 25 "));
}

#[test]
fn export_lp() {
    let out = edd(&["export-lp", "--instance", &fixture("ten_servers.edd")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("\\ "));
    assert!(text.contains("\nSubject To\n") && text.ends_with("End\n"));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.toml");
    std::fs::write(
        &spec,
        "param = \"llimit\"\nvalues = [100, 120]\nreps = 2\nseed = 1\n\
         algorithms = [\"exact\", \"nste\", \"edd-a\", \"greedy\", \"random\"]\n\n\
         [fixed]\nn = 12\ndelta = 1.5\nrho = 0.4\ngamma = 100\nllimit = 110\n",
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let out = edd(&["bench", "--spec", p(&spec), "--out", p(&csv)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(edd::bench::CSV_HEADER));
    // At llimit = gamma every algorithm pays gamma per destination.
    for line in text.lines().filter(|l| l.starts_with("llimit,100,")) {
        let total: f64 = line.split(',').nth(5).unwrap().parse().unwrap();
        assert_eq!(total, 500.0, "{line}");
    }
    assert_eq!(text.lines().filter(|l| l.contains(",mean,")).count(), 10);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "param = \"llimit\"\nvalues = []\n").unwrap();
    assert_eq!(edd(&["bench", "--spec", p(&bad)]).status.code(), Some(2));
}
