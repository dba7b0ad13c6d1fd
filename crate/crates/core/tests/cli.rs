use std::path::PathBuf;

use serde_json::Value;
use small_overlap::cli::{run, EXIT_DISTINCT, EXIT_NOT_C4, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["small-overlap"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eq_exit_codes() {
    let p1 = fixture("p1.pres");
    assert_eq!(cli(&["-p", &p1, "eq", "abcd", "badc"]), (EXIT_OK, "equal\n".into(), String::new()));
    assert_eq!(cli(&["-p", &p1, "eq", "abcd", "abcd"]).0, EXIT_OK);
    assert_eq!(cli(&["-p", &p1, "eq", "abcd", "abdc"]), (EXIT_DISTINCT, "distinct\n".into(), String::new()));
    assert_eq!(cli(&["-p", &p1, "prefix-eq", "abcd", "badc", "b"]).0, EXIT_OK);
    assert_eq!(cli(&["-p", &p1, "prefix-eq", "abcd", "abcd", "c"]).0, EXIT_DISTINCT);
}

#[test]
fn check_reports() {
    let (code, out, _) = cli(&["-p", &fixture("p3.pres"), "check"]);
    assert_eq!((code, out.as_str()), (EXIT_NOT_C4, "weak_n=1 strong_c4=false\n"));
    let (code, out, _) = cli(&["-p", &fixture("p1.pres"), "check"]);
    assert_eq!((code, out.lines().next().unwrap()), (EXIT_OK, "weak_n=4 strong_c4=true"));
    let (code, out, _) = cli(&["-p", &fixture("p2.pres"), "check"]);
    assert_eq!((code, out.lines().next().unwrap()), (EXIT_OK, "weak_n=4 strong_c4=false"));
}

#[test]
fn word_problem_refuses_p3() {
    let (code, _, err) = cli(&["-p", &fixture("p3.pres"), "eq", "aba", "b"]);
    assert_eq!(code, EXIT_NOT_C4);
    assert!(err.starts_with("error:"));
    // The oracle works on any presentation.
    assert_eq!(cli(&["-p", &fixture("p3.pres"), "oracle-eq", "aba", "b"]).0, EXIT_OK);
}

#[test]
fn pieces_and_normal_forms() {
    let p1 = fixture("p1.pres");
    assert_eq!(cli(&["-p", &p1, "pieces"]).1, "a\nb\nc\nd\n");
    assert_eq!(cli(&["-p", &p1, "normal-form", "badc"]).1, "abcd\n");
    assert_eq!(cli(&["-p", &p1, "normal-form", "a"]).1, "a\n");
    assert_eq!(cli(&["-p", &fixture("p2.pres"), "normal-form", "dacb"]).1, "abcd\n");
}

#[test]
fn analyze_line() {
    let p1 = fixture("p1.pres");
    let (code, out, _) = cli(&["-p", &p1, "analyze", "aabcdc"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().any(|l| l == "relprefix=a|a|bc clean=true"), "{out}");
    let (_, out, _) = cli(&["-p", &p1, "analyze", "ab"]);
    assert!(out.lines().any(|l| l == "relprefix=none clean=false"), "{out}");
}

#[test]
fn trace_labels() {
    let (_, out, _) = cli(&["-p", &fixture("p1.pres"), "--trace", "eq", "aabcdc", "abadcc"]);
    assert!(out.contains("strip case1a strip strip yes"), "{out}");
}

#[test]
fn json_schema() {
    let p1 = fixture("p1.pres");
    for args in [
        vec!["eq", "abcd", "badc"],
        vec!["check"],
        vec!["pieces"],
        vec!["analyze", "abcdc"],
        vec!["normal-form", "badc"],
        vec!["oracle-eq", "abcd", "abdc"],
    ] {
        let mut argv = vec!["--json", "-p", &p1];
        argv.extend(args.iter().copied());
        let (_, out, _) = cli(&argv);
        let v: Value = serde_json::from_str(out.trim()).unwrap();
        for key in ["command", "presentation_hash", "result", "timings"] {
            assert!(v.get(key).is_some(), "{key} missing in {out}");
        }
        assert_eq!(v["command"], args[0]);
        assert_eq!(v["presentation_hash"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn bench_tsv() {
    let (code, out, _) = cli(&["-p", &fixture("p1.pres"), "bench", "--base-len", "1000", "--doublings", "2"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("length\tns_per_query"));
    let lengths: Vec<usize> = lines.map(|l| l.split('\t').next().unwrap().parse().unwrap()).collect();
    assert_eq!(lengths, [1000, 2000, 4000]);
}

#[test]
fn fuzz_summary() {
    let (code, out, _) = cli(&["fuzz", "--seeds", "5", "--pairs", "50"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(cli(&["eq", "a", "b"]).0, EXIT_USAGE);
    assert_eq!(cli(&["-p", &fixture("p1.pres"), "frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["-p", &fixture("p1.pres"), "eq", "abq", "b"]).0, EXIT_USAGE);
    assert_eq!(cli(&["-p", "/nonexistent.pres", "check"]).0, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).0, EXIT_OK);
}
