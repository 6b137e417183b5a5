use std::fs;
use std::process::{Command, Output};

use braidhom_cli::document::ResultDocument;

fn braidhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidhom")).args(args).env_remove("BRAIDHOM_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, String) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = braidhom(&a);
    (o.status.code().unwrap(), stdout(&o))
}

#[test]
fn trivial_knot_x_is_one() {
    let (code, out) = json(&["invariant", "--type", "A", "--strands", "1", "--braid", ""]);
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert!(doc.x.unwrap().is_one());
    assert_eq!(doc.schema_version, 1);
}

#[test]
fn trefoil_document_round_trips() {
    let (code, out) = json(&["invariant", "--type", "A", "--strands", "2", "--braid", "1 1 1", "--cuto", "12"]);
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert_eq!(doc.to_json(), out.trim_end());
    let table = doc.table.unwrap();
    assert_eq!(table.cutoff, 12);
    assert_eq!(table.total(), 3);
    assert!(doc.x.unwrap().series.terms().all(|(_, c)| *c > 0));
}

#[test]
fn output_is_reproducible() {
    let args = ["invariant", "--braid", "1 -2 1", "--cutoff", "6"];
    assert_eq!(json(&args), json(&args));
}

#[test]
fn non_type_a_reports_trace_only() {
    let (code, out) = json(&["invariant", "--type", "B2", "--braid", "1 2 1 2"]);
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert!(doc.x.is_none() && doc.y.is_none());
    assert!(doc.x_status.unwrap().starts_with("unsupported"));
    assert!(doc.trace.is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(braidhom(&["invariant", "--braid", "1 x"]).status.code(), Some(2));
    assert_eq!(braidhom(&["invariant", "--braid", "1", "--cutoff", "-1"]).status.code(), Some(2));
    assert_eq!(braidhom(&["invariant", "--type", "A", "--strands", "2", "--braid", "2"]).status.code(), Some(2));
    assert_eq!(braidhom(&["check", "skein", "--type", "B2", "--b", "1", "--r", "2"]).status.code(), Some(3));
    // fit failure still prints the document
    let (code, out) = json(&["invariant", "--type", "B2", "--braid", "1 2 1 2", "--cutoff", "4"]);
    assert_eq!(code, 4);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert!(doc.hilbert.iter().any(|h| h.error.is_some()));
}

#[test]
fn checks_pass() {
    for args in [
        vec!["check", "stab", "--braid", "1 1 1", "--sign", "+"],
        vec!["check", "stab", "--braid", "-1", "--sign", "-", "--cutoff", "6"],
        vec!["check", "skein", "--b", "1", "--bp", "", "--r", "1"],
        vec!["check", "conj", "--b", "1 2", "--bp", "1"],
        vec!["check", "parabolic", "--braid", "1 1", "--cutoff", "6"],
        vec!["check", "parabolic", "--type", "B2", "--gen", "2", "--braid", "1", "--cutoff", "6"],
        vec!["check", "decat", "--braid", "1 2 -1", "--cutoff", "6"],
    ] {
        let (code, out) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        let doc = ResultDocument::from_json(&out).unwrap();
        assert_eq!(doc.pass, Some(true), "{args:?}");
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let base = ["invariant", "--braid", "1 -2 1 2", "--cutoff", "6"];
    let (_, plain) = json(&base);
    let cached_args: Vec<&str> = base.iter().copied().chain(["--cache-dir", d]).collect();
    let (_, first) = json(&cached_args);
    let entries = fs::read_dir(dir.path()).unwrap().filter(|e| e.as_ref().unwrap().file_name() != ".lock").count();
    assert_eq!(entries, 2, "one complex and one table");
    let (_, second) = json(&cached_args);
    assert_eq!(plain, first);
    assert_eq!(first, second);
    // a larger cutoff reuses the complex and adds a table
    let more: Vec<&str> = ["invariant", "--braid", "1 -2 1 2", "--cutoff", "7", "--cache-dir", d].to_vec();
    json(&more);
    let entries = fs::read_dir(dir.path()).unwrap().filter(|e| e.as_ref().unwrap().file_name() != ".lock").count();
    assert_eq!(entries, 3);
    // corrupt every entry: results are recomputed and unchanged
    for e in fs::read_dir(dir.path()).unwrap() {
        let p = e.unwrap().path();
        if p.file_name().unwrap() != ".lock" {
            fs::write(&p, "0000\n{}").unwrap();
        }
    }
    let (code, third) = json(&cached_args);
    assert_eq!(code, 0);
    assert_eq!(third, plain);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_braidhom"))
        .args(["invariant", "--braid", "1", "--cutoff", "6"])
        .env("BRAIDHOM_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 2);
}

#[test]
fn timings_are_opt_in() {
    let (_, out) = json(&["invariant", "--braid", "1"]);
    assert!(ResultDocument::from_json(&out).unwrap().timings_ms.is_none());
    let (_, out) = json(&["invariant", "--braid", "1", "--timings"]);
    assert!(ResultDocument::from_json(&out).unwrap().timings_ms.is_some());
}

#[test]
fn human_output() {
    let o = braidhom(&["check", "conj", "--b", "1 2", "--bp", "-1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS conjugation"));
}
