use std::io::Write;
use std::process::{Command, Output, Stdio};

use garside_cli::input::{parse_input, render};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn garside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_garside")).args(args).env_remove("GARSIDE_FUEL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn check_complete_on_braids() {
    let o = garside(&["check-complete", &fixture("b3.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("complete"));
    let o = garside(&["check-complete", &fixture("cube_failure.txt")]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn garside_closure_lists_the_divisors_of_delta() {
    let o = garside(&["garside-closure", &fixture("b3.txt")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["a", "b", "a b", "b a", "a b a", "ε"]);
}

#[test]
fn word_problem_says_no_with_exit_one() {
    let o = garside(&["word-problem", &fixture("b3.txt"), "a b b", "b a b b"]);
    assert_eq!(code(&o), 1);
    let o = garside(&["word-problem", &fixture("b3.txt"), "a b a", "b a b"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn parse_errors_exit_three() {
    let dir = std::env::temp_dir().join(format!("garside-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "gens: a b\nrels: a b = b a = c\n").unwrap();
    let o = garside(&["check-complete", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(code(&garside(&["no-such-command"])), 3);
    assert_eq!(code(&garside(&["normalize", &fixture("b3.txt"), "a c"])), 3);
}

#[test]
fn inconclusive_runs_exit_two() {
    let o = garside(&["--fuel", "1000", "reverse", &fixture("baumslag_solitar.txt"), "~a b a"]);
    assert_eq!(code(&o), 2);
    let o = garside(&["closure", &fixture("abb_ba.txt")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn fuel_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(["reverse", &fixture("baumslag_solitar.txt"), "~a b a"])
        .env("GARSIDE_FUEL", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn dash_reads_stdin() {
    let text = std::fs::read_to_string(fixture("b3.txt")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(["normalize", "-", "b a b b"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "aba·b");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["info", &fixture("b3.txt")[..]],
        vec!["--json", "witness-table", &fixture("b3_germ.txt")[..]],
        vec!["--json", "sym-normalize", &fixture("b3.txt")[..], "a a b ~a ~b"],
    ] {
        let first = garside(&args);
        assert_eq!(code(&first), 0);
        assert_eq!(first.stdout, garside(&args).stdout);
    }
}

#[test]
fn json_keys_are_sorted() {
    let o = garside(&["--json", "normalize", &fixture("b3.txt"), "b a b b"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let s = stdout(&o);
    assert!(s.find("\"entries\"").unwrap() < s.find("\"text\"").unwrap());
    let e = garside(&["--json", "normalize", &fixture("b3.txt"), "z"]);
    let v: serde_json::Value = serde_json::from_slice(&e.stdout).unwrap();
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn fixtures_round_trip_through_render() {
    for entry in std::fs::read_dir(format!("{}/tests/fixtures", env!("CARGO_MANIFEST_DIR"))).unwrap() {
        let path = entry.unwrap().path();
        let src = parse_input(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let text = render(&src);
        assert_eq!(parse_input(&text).unwrap(), src, "{}", path.display());
        assert_eq!(render(&parse_input(&text).unwrap()), text);
    }
}
