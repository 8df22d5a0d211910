//! End-to-end runs of the binary: exit-code contract, JSON shape, and
//! replaying gadget contracts through `check`.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_netlogic");

const DRAIN: &str = "net drain\nplace s init 3\ntrans t\nin s:1\n";
const DRAIN2: &str = "net small\nplace s init 2\ntrans t\nin s:1\n";
const PUMP: &str = "net pump\nplace s init 0\ntrans t\nout s:1\n";

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN).args(args).current_dir(dir).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes_follow_the_verdict() {
    let dir = tempdir();
    let net = write(&dir, "drain.net", DRAIN);
    let holds = write(&dir, "holds.fo", "forall x . x ->* x\n");
    let fails = write(&dir, "fails.fo", "exists x . x -> x\n");
    let stuck = write(&dir, "stuck.fo", "forall x . exists y . x ->* y\n");
    let pump = write(&dir, "pump.net", PUMP);

    assert_eq!(run(&["check", &net, &holds], &dir).status.code(), Some(0));
    assert_eq!(run(&["check", &net, &fails], &dir).status.code(), Some(1));
    // unbounded net, universal closure sentence, no descriptions: no route
    assert_eq!(run(&["check", &pump, &stuck], &dir).status.code(), Some(2));
    // parse errors and bad usage exit above 2
    let bad = write(&dir, "bad.fo", "forall x .\n");
    assert_eq!(run(&["check", &net, &bad], &dir).status.code(), Some(3));
    assert_eq!(run(&["check", &net], &dir).status.code(), Some(3));
    assert_eq!(run(&["--help"], &dir).status.code(), Some(0));
}

#[test]
fn check_json_is_machine_readable() {
    let dir = tempdir();
    let net = write(&dir, "drain.net", DRAIN);
    let f = write(&dir, "f.fo", "forall x . x ->* x\n");
    let out = run(&["check", &net, &f, "--format", "json"], &dir);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["truncated"], false);
    assert!(v["engine"].is_string() && v["route"]["engine"].is_string());
}

#[test]
fn explore_reports_boundedness_and_renders_dot() {
    let dir = tempdir();
    let net = write(&dir, "drain.net", DRAIN);
    let out = run(&["explore", &net, "--format", "json"], &dir);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["complete"], true);
    assert_eq!(v["boundedness"]["bounded"], true);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 4);

    let pump = write(&dir, "pump.net", PUMP);
    let out = run(&["explore", &pump, "--cap", "10", "--format", "json"], &dir);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["boundedness"]["bounded"], false);

    let out = run(&["explore", &net, "--format", "dot"], &dir);
    let text = stdout(&out);
    assert!(text.contains("digraph drain") && text.contains("->"));
}

#[test]
fn gadget_contracts_replay_under_check() {
    let dir = tempdir();
    let a = write(&dir, "a.net", DRAIN);
    let b = write(&dir, "b.net", DRAIN2);

    // equal inputs: the union sentence holds; unequal: it fails
    assert_eq!(run(&["gadget", "union", &a, &a, "--out", "eq"], &dir).status.code(), Some(0));
    let v = run(&["check", "eq/union.net", "eq/union.formula"], &dir);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    run(&["gadget", "union", &a, &b, "--out", "ne"], &dir);
    assert_eq!(run(&["check", "ne/union.net", "ne/union.formula"], &dir).status.code(), Some(1));

    // contract JSON names the files it was written next to
    let contract: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("eq/union.json")).unwrap())
            .unwrap();
    assert_eq!(contract["net_file"], "union.net");
    assert_eq!(contract["formula_kind"], "fo");

    // a true and a false quantified boolean formula
    run(&["gadget", "qbf", "E p1 A p2 (p1 | p2)", "--out", "qt"], &dir);
    assert_eq!(run(&["check", "qt/qbf.net", "qt/qbf.formula"], &dir).status.code(), Some(0));
    run(&["gadget", "qbf", "E p1 A p2 (p1 & p2)", "--out", "qf"], &dir);
    assert_eq!(run(&["check", "qf/qbf.net", "qf/qbf.formula"], &dir).status.code(), Some(1));

    // reachable and unreachable targets
    run(&["gadget", "reach", &a, "--m1", "2", "--m2", "0", "--out", "rt"], &dir);
    assert_eq!(run(&["check", "rt/reach.net", "rt/reach.formula"], &dir).status.code(), Some(0));
    run(&["gadget", "reach", &a, "--m1", "2", "--m2", "5", "--out", "rf"], &dir);
    assert_eq!(run(&["check", "rf/reach.net", "rf/reach.formula"], &dir).status.code(), Some(1));
}

#[test]
fn classify_and_presburger_roundtrip() {
    let dir = tempdir();
    let f = write(&dir, "f.fo", "exists x . exists y . x -> y & !(x = y)\n");
    let out = run(&["classify", &f, "--format", "json"], &dir);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["logic"], "fo");
    assert_eq!(v["is_existential"], true);
    assert_eq!(v["variable_count"], 2);

    let m = write(&dir, "m.ml", "box dia {s >= 1}\n");
    let out = run(&["classify", &m, "--format", "json"], &dir);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["logic"], "ml");
    assert_eq!(v["modal_degree"], 2);
    assert_eq!(v["constraint_places"][0], "s");

    let t = write(&dir, "t.pres", "forall x . exists y . y >= x\n");
    assert_eq!(run(&["presburger", &t], &dir).status.code(), Some(0));
    let fls = write(&dir, "f.pres", "exists x . x + 1 <= x\n");
    assert_eq!(run(&["presburger", &fls], &dir).status.code(), Some(1));
    let free = write(&dir, "free.pres", "exists y . x = y + y\n");
    let out = run(&["presburger", &free, "--eliminate"], &dir);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("exists"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempdir();
    let net = write(&dir, "drain.net", DRAIN);
    let f = write(&dir, "f.fo", "forall x . x ->* x\n");
    let a = run(&["check", &net, &f, "--format", "json"], &dir);
    let b = run(&["check", &net, &f, "--format", "json"], &dir);
    assert_eq!(stdout(&a), stdout(&b));
    let a = run(&["explore", &net, "--format", "dot"], &dir);
    let b = run(&["explore", &net, "--format", "dot"], &dir);
    assert_eq!(stdout(&a), stdout(&b));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "netlogic-cli-test-{}-{:?}",
        std::process::id(),
        std::thread::current().id()
    ));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
