use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ENDS_WITH_A: &str = "type: dfa
alphabet: a b
states: n y
initial: n
final: y
n a -> y
n b -> n
y a -> y
y b -> n
";

const STARTS_WITH_A: &str = "type: dfa
alphabet: a b
states: i y n
initial: i
final: y
i a -> y
i b -> n
y a -> y
y b -> y
n a -> n
n b -> n
";

const EVEN_LENGTH: &str = "type: dfa
alphabet: a b
states: e o
initial: e
final: e
e a -> o
e b -> o
o a -> e
o b -> e
";

const EVEN_AS: &str = "type: dfa
alphabet: a b
states: e o
initial: e
final: e
e a -> o
e b -> e
o a -> e
o b -> o
";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slidewin"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_both_models() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.txt", STARTS_WITH_A);
    let o = run(&["classify", a.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(
        s.contains("fixed: linear") && s.contains("variable: linear"),
        "{s}"
    );

    let e = write(dir.path(), "e.txt", EVEN_LENGTH);
    let s = stdout(&run(&["classify", e.to_str().unwrap()]));
    assert!(
        s.contains("fixed: constant") && s.contains("variable: logarithmic"),
        "{s}"
    );
}

#[test]
fn malformed_file_names_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.txt",
        "type: dfa\nalphabet: a b\nstates: x\nnonsense here\n",
    );
    let o = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn measure_row_for_ends_with_a() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", ENDS_WITH_A);
    let s = stdout(&run(&["measure", f.to_str().unwrap(), "--max-n", "3"]));
    assert!(s.lines().any(|l| l == "3,1,2,7"), "{s}");
}

#[test]
fn measure_trivial_language_notes_caveat() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "t.txt",
        "type: dfa\nalphabet: a b\nstates: q\ninitial: q\nfinal: q\nq a -> q\nq b -> q\n",
    );
    let o = run(&[
        "measure",
        f.to_str().unwrap(),
        "--max-n",
        "4",
        "--out",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["v_bits"] == 0));
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn simulate_pop_and_final_window() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", ENDS_WITH_A);
    let s = write(dir.path(), "s.txt", "a b !\n");
    let out = stdout(&run(&[
        "simulate",
        f.to_str().unwrap(),
        "--algo",
        "optimal-variable",
        "--stream",
        s.to_str().unwrap(),
    ]));
    assert!(out.contains("final window: b"), "{out}");
    assert!(out.contains("final answer: reject"), "{out}");

    let pops = write(dir.path(), "p.txt", "! ! a\n");
    let out = stdout(&run(&[
        "simulate",
        f.to_str().unwrap(),
        "--algo",
        "optimal-variable",
        "--stream",
        pops.to_str().unwrap(),
    ]));
    assert!(out.contains("final window: a"), "{out}");
}

#[test]
fn simulate_differential_check() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", ENDS_WITH_A);
    let o = run(&[
        "simulate",
        f.to_str().unwrap(),
        "--algo",
        "optimal-variable",
        "--random",
        "10000",
        "--verify",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["mismatches"], 0);

    let e = write(dir.path(), "e.txt", EVEN_LENGTH);
    for algo in ["trivial", "sparse", "constant"] {
        let o = run(&[
            "simulate",
            e.to_str().unwrap(),
            "--algo",
            algo,
            "--window",
            "5",
            "--random",
            "500",
            "--verify",
        ]);
        assert!(o.status.success(), "{algo}");
        assert!(stdout(&o).contains("mismatches: 0"));
    }
}

#[test]
fn decide_exit_codes_and_witness_round_trip() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", EVEN_AS);
    let o = run(&["decide", "dfalog", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("critical tuple"));

    let o = run(&["decide", "dfalog", f.to_str().unwrap(), "--format", "json"]);
    let report = write(dir.path(), "r.json", &stdout(&o));
    let v = run(&["verify", report.to_str().unwrap()]);
    assert!(v.status.success(), "{}", stdout(&v));

    let e = write(dir.path(), "e.txt", EVEN_LENGTH);
    assert_eq!(
        run(&["decide", "dfa1", e.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["decide", "nope", e.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn decompose_writes_verifiable_certificate() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", ENDS_WITH_A);
    let cert = dir.path().join("cert.json");
    let o = run(&[
        "decompose",
        f.to_str().unwrap(),
        "--kind",
        "constant",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verification: ok"));
    let v = run(&["verify", cert.to_str().unwrap()]);
    assert!(v.status.success());
    assert!(stdout(&v).starts_with("ok"));

    let mut doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&cert).unwrap()).unwrap();
    doc["formula"] = serde_json::json!({"op": "leaf", "args": 0});
    let tampered = write(dir.path(), "bad.json", &doc.to_string());
    assert_eq!(
        run(&["verify", tampered.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn classify_report_verifies() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", STARTS_WITH_A);
    let o = run(&["--format", "json", "classify", f.to_str().unwrap()]);
    let report = write(dir.path(), "r.json", &stdout(&o));
    assert!(run(&["verify", report.to_str().unwrap()]).status.success());
}

#[test]
fn generate_lk_has_k_plus_three_states() {
    let o = run(&["generate", "lk", "--k", "2"]);
    let s = stdout(&o);
    let states = s.lines().find_map(|l| l.strip_prefix("states: ")).unwrap();
    assert_eq!(states.split_whitespace().count(), 5);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.txt", STARTS_WITH_A);
    let args = ["--format", "json", "classify", f.to_str().unwrap()];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let gen = ["generate", "rho-log", "--seed", "7"];
    assert_eq!(run(&gen).stdout, run(&gen).stdout);
    let sim = [
        "simulate",
        f.to_str().unwrap(),
        "--algo",
        "optimal-variable",
        "--random",
        "200",
        "--seed",
        "3",
    ];
    assert_eq!(run(&sim).stdout, run(&sim).stdout);
}
