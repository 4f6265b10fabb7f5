use std::path::Path;
use std::process::{Command, Output};

use nbtower::file::TowerFileV1;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbtower"))
        .args(args)
        .env_remove("NBTOWER_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn load(p: &str) -> TowerFileV1 {
    TowerFileV1::from_json(&std::fs::read_to_string(Path::new(p)).unwrap()).unwrap()
}

#[test]
fn build_binary_tower() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "t.json");
    let o = run(&["build", "--p", "2", "--levels", "5", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("degrees 2,4,8,16,32"));
    let f = load(&out);
    let degrees: Vec<usize> = f.levels.iter().map(|l| l.degree).collect();
    assert_eq!(degrees, vec![2, 4, 8, 16, 32]);
}

#[test]
fn build_ternary_tower() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "t.json");
    let o = run(&["build", "--p", "3", "--levels", "3", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("degrees 3,9,27"));
    assert!(stdout(&o).contains("two-term rows 2"));
}

#[test]
fn build_rejects_composite_p() {
    let dir = TempDir::new().unwrap();
    let o = run(&["build", "--p", "4", "--levels", "2", "--out", &path(&dir, "t.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("p must be prime"));
}

#[test]
fn build_respects_degree_bound() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nbtower"))
        .args(["build", "--p", "2", "--levels", "5", "--out", &path(&dir, "t.json")])
        .env("NBTOWER_MAX_DEGREE", "16")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("exceeds"));
}

#[test]
fn kummer_examples() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "k.json");
    let o = run(&["kummer", "--p", "7", "--q", "3", "--l", "1", "--s", "1", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let f = load(&out);
    let level = &f.levels[0];
    assert_eq!(level.degree, 3);
    assert_eq!(level.xi, Some(vec![2]));
    assert_eq!(level.zeta, Some(vec![4]));

    let out = path(&dir, "k2.json");
    let o = run(&["kummer", "--p", "5", "--q", "2", "--l", "1", "--s", "2", "--out", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(load(&out).levels[0].degree, 4);

    let o = run(&["kummer", "--p", "7", "--q", "5", "--l", "1", "--s", "1", "--out", &path(&dir, "k3.json")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_fresh_corrupted_and_malformed() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "t.json");
    assert_eq!(code(&run(&["build", "--p", "3", "--levels", "2", "--out", &out])), 0);
    let o = run(&["verify", &out, "--deep"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let mut f = load(&out);
    let c = &mut f.levels[1].tables[0].rows[1].terms[0].1[0];
    *c = (*c + 1) % 3;
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, f.to_json()).unwrap();
    let o = run(&["verify", &bad]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("gamma row 2"), "{}", stdout(&o));

    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{\"format_version\": 1,").unwrap();
    assert_eq!(code(&run(&["verify", &junk])), 2);
}

#[test]
fn verify_kummer_file() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "k.json");
    assert_eq!(code(&run(&["kummer", "--p", "13", "--q", "3", "--out", &out])), 0);
    let o = run(&["verify", &out, "--deep", "--json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("\"failures\": []"));
}

#[test]
fn bench_runs_and_handles_edge_cases() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "t.json");
    assert_eq!(code(&run(&["build", "--p", "2", "--levels", "5", "--out", &out])), 0);
    let o = run(&["bench", &out, "--ops", "500", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("mul polynomial basis"));
    assert!(s.contains("frobenius matrix / rotation"));
    assert!(s.contains("mismatches: 0"));

    let o = run(&["bench", &out, "--ops", "0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no operations requested"));

    assert_eq!(code(&run(&["bench", &path(&dir, "missing.json")])), 2);
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(code(&run(&["build", "--p", "2"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}
