use std::process::{Command, Output};

fn hhh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhh")).args(args).env_remove("HHH_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn trefoil_json_is_deterministic() {
    let args = ["hhh", "-m", "2", "-w", "1 1 1", "--qmax", "12", "--json"];
    let (a, b) = (hhh(&args), hhh(&[&args[..], &["--jobs", "3"]].concat()));
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    let keys: Vec<_> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["q"].as_i64().unwrap(), e["a"].as_i64().unwrap(), e["t"].as_i64().unwrap()))
        .collect();
    assert_eq!(keys, [(0, 0, 0), (4, 0, -2), (4, 1, 0)]);
}

#[test]
fn cache_hit_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let args = ["hhh", "-m", "3", "-w", "s1 s2^-1 s1 s2^-1", "--qmax", "10", "--json"];
    let fresh = hhh(&args);
    let cached_args = [&args[..], &["--cache-dir", path]].concat();
    let first = hhh(&cached_args);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = hhh(&cached_args);
    assert_eq!(stdout(&fresh), stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn reduce_info_for_five_crossings() {
    let o = hhh(&["reduce-info", "-m", "2", "-w", "1 1 1 1 1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("before: 32 summands"), "{text}");
    assert!(text.contains("after: 6 summands"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(hhh(&["hhh", "-m", "2", "-w", "3"]).status.code(), Some(2));
    assert_eq!(hhh(&["hhh", "-m", "2", "-w", "1 x"]).status.code(), Some(2));
    assert_eq!(hhh(&["hhh", "-m", "2", "-w", "1", "--qmax", "7"]).status.code(), Some(2));
    assert_eq!(hhh(&["check", "soergel"]).status.code(), Some(0));
    assert_eq!(hhh(&["check", "euler", "-m", "3", "-w", "1 -2 1 -2", "--qmax", "16"]).status.code(), Some(0));
}

#[test]
fn homfly_of_the_trefoil() {
    let o = hhh(&["homfly", "-m", "2", "-w", "1 1 1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["denominator_power"], 0);
}
