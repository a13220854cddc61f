//! End-to-end runs of the `ultimate` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use ultimate::semantics::SemanticsResult;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ultimate"))
}

fn file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ultimate-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn cyclic() -> String {
    file("cyclic.lp", "% cycle through p\np :- p.\np :- not p.\n")
        .display()
        .to_string()
}

fn fact() -> String {
    file("fact.lp", "p.\n").display().to_string()
}

#[test]
fn solve_cyclic() {
    let cyclic = cyclic();
    let wf = run(&["solve", &cyclic, "--method", "wf"]);
    assert_eq!(wf.status.code(), Some(0));
    assert!(stdout(&wf).contains("p: unknown"));

    let uwf = run(&["solve", &cyclic, "--method", "ultimate-wf"]);
    assert!(stdout(&uwf).contains("p: true"));

    let us = run(&["solve", &cyclic, "--method", "ultimate-stable"]);
    assert!(stdout(&us).contains("models: [[p]]"), "{}", stdout(&us));
    let st = run(&["solve", &cyclic, "--method", "stable"]);
    assert!(stdout(&st).contains("models: []"), "{}", stdout(&st));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let cyclic = cyclic();
    let a = run(&["solve", &cyclic, "--method", "all", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    let parsed: SemanticsResult = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(parsed.results.as_ref().unwrap().len(), 7);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["method", "atoms", "stats"] {
        assert!(value.get(key).is_some(), "missing {key}");
    }
    let uwf = &value["results"][5];
    assert_eq!(uwf["method"], "ultimate-wf");
    assert_eq!(uwf["truth"]["p"], "true");
    assert!(uwf["stats"]["elapsed_ms"].is_u64());

    let b = run(&["solve", &cyclic, "--method", "all", "--format", "json"]);
    let strip = |o: &Output| {
        let r: SemanticsResult = serde_json::from_slice(&o.stdout).unwrap();
        r.without_timing()
    };
    assert_eq!(strip(&a), strip(&b));
    let t1 = run(&["solve", &cyclic, "--method", "all"]);
    let t2 = run(&["solve", &cyclic, "--method", "all"]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn compare_cyclic_fact() {
    let out = run(&["compare", &cyclic(), &fact()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("tp-equal: yes"), "{text}");
    assert!(text.contains("ultimate semantics equal: yes"), "{text}");
    assert!(text.contains("standard semantics equal: no"), "{text}");
    assert!(text.contains("stable: differ"), "{text}");
}

#[test]
fn compare_reordered_horn_programs() {
    let a = file("h1.lp", "a. b :- a. c :- b, a. d :- d.");
    let b = file("h2.lp", "d :- d. c :- a, b. b :- a. a. a.");
    let out = run(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(!text.contains("differ") && !text.contains(": no"), "{text}");
}

#[test]
fn exit_codes() {
    let bad = file("bad.lp", "p :- q q.\n");
    let out = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1, column 8"));

    let wide = file("wide.lp", "a :- not b. b :- not c. c :- not d. d :- not a.");
    let out = run(&[
        "solve",
        wide.to_str().unwrap(),
        "--method",
        "stable",
        "--max-enum-atoms",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "oracle-check",
        wide.to_str().unwrap(),
        "--max-pair-sweep",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));

    assert_eq!(run(&["solve"]).status.code(), Some(1));
    assert_eq!(
        run(&["solve", "/nonexistent/file.lp"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn oracle_check_commands() {
    let out = run(&["oracle-check", &cyclic()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));

    let out = run(&[
        "oracle-check",
        "--random",
        "100",
        "--seed",
        "1",
        "--atoms",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&["oracle-check", &cyclic(), "--corrupt-fast-path"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(
        stdout(&out).contains("FAIL ultimate-vs-brute: at ("),
        "{}",
        stdout(&out)
    );
}

#[test]
fn classify_files() {
    let out = run(&["classify", &cyclic(), "--k", "2"]);
    assert!(stdout(&out).contains("member: yes"));
    let neg = file(
        "neg.lp",
        "a :- not b, not c, not d. a :- not c, not d. a :- not b, not d. b :- not a.",
    );
    assert!(stdout(&run(&["classify", neg.to_str().unwrap(), "--k", "0"])).contains("member: yes"));
    let bad = file(
        "mixed.lp",
        "h :- a, b, not c, not d. h :- b, c, not a, not d. h :- c, d, not a, not b.",
    );
    let text = stdout(&run(&["classify", bad.to_str().unwrap(), "--k", "2"]));
    assert!(text.contains("member: no (violating atoms: h)"), "{text}");
}

#[test]
fn gen_commands() {
    let a = run(&["gen", "random", "--shape", "horn", "--seed", "7"]);
    let b = run(&["gen", "random", "--shape", "horn", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let out = run(&["gen", "sigma2", "--phi", "(or y1 (not y1))", "--ys", "y1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let path = file("sigma.lp", &text);
    let solved = run(&[
        "solve",
        path.to_str().unwrap(),
        "--method",
        "ultimate-stable",
    ]);
    assert!(
        stdout(&solved).contains("models: [[p, y1]]"),
        "{}",
        stdout(&solved)
    );

    let out = run(&[
        "gen",
        "sigma2",
        "--phi",
        "(or (and x1 y1) (and (not x1) (not y1)))",
        "--xs",
        "x1",
        "--ys",
        "y1",
    ]);
    let program = ultimate::lp::parse(&stdout(&out)).unwrap();
    let normal = ultimate::lp::normalize(&program);
    let defined = normal.bodies().iter().filter(|b| !b.is_falsum()).count();
    // 2|xs| + |ys| + 2 with one existential and one universal atom.
    assert_eq!(defined, 5);

    let help = stdout(&run(&["gen", "sigma2", "--help"]));
    assert!(help.contains("(or (and x1 y1)"), "{help}");
}
