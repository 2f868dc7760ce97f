use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use supertree::constructions::FamilyId;
use supertree::decode;

fn supertree(args: &[&str], stdin: Option<&str>, results: &Path) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_supertree"))
        .args(args)
        .env("SUPERTREE_RESULTS", results)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch() -> (tempfile::TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("results.jsonl");
    (dir, path)
}

#[test]
fn build_pipes_into_universal() {
    let (_dir, res) = scratch();
    let built = supertree(
        &["build", "--family", "delta", "--d", "3", "--k", "4"],
        None,
        &res,
    );
    assert!(built.status.success());
    let out = supertree(
        &[
            "universal",
            "--mode",
            "contiguous",
            "--kind",
            "dary",
            "--d",
            "3",
            "--k",
            "4",
            "--format",
            "json",
        ],
        Some(&stdout(&built)),
        &res,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["stats"]["patterns_checked"], 55);
}

#[test]
fn universal_false_exits_one() {
    let (_dir, res) = scratch();
    let out = supertree(
        &[
            "universal",
            "--host",
            "d2:((__)_)",
            "--k",
            "3",
            "--mode",
            "contiguous",
        ],
        None,
        &res,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("false"));
}

#[test]
fn contains_exit_codes() {
    let (_dir, res) = scratch();
    let args = |host: &'static str, pattern: &'static str| {
        [
            "contains",
            "--mode",
            "noncontiguous",
            "--host",
            host,
            "--pattern",
            pattern,
        ]
    };
    assert_eq!(
        supertree(&args("d2:((_(__))_)", "d2:((__)_)"), None, &res)
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        supertree(&args("d2:(_(__))", "d2:((__)_)"), None, &res)
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        supertree(&args("d2:(_", "d2:(__)"), None, &res)
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        supertree(&["contains", "--mode", "sideways"], None, &res)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn rho_prints_twelve_digits() {
    let (_dir, res) = scratch();
    let out = supertree(&["rho", "--d", "2"], None, &res);
    assert_eq!(stdout(&out).trim(), "1.61803398875");
}

#[test]
fn build_output_decodes_for_every_family() {
    let (_dir, res) = scratch();
    for family in FamilyId::ALL {
        for d in 2..=3 {
            // j_gadget needs k <= d distinct types; the others accept any k
            let top = if family == FamilyId::JGadget { d } else { 10 };
            for k in 1..=top {
                let args = [
                    "build",
                    "--family",
                    family.name(),
                    "--d",
                    &d.to_string(),
                    "--k",
                    &k.to_string(),
                ];
                let out = supertree(&args, None, &res);
                assert!(out.status.success(), "{family} d={d} k={k}");
                let t = decode(stdout(&out).trim()).unwrap();
                assert_eq!(t.degree_bound(), d);
            }
        }
    }
}

#[test]
fn minimal_is_stable_across_runs_and_jobs() {
    let (_dir, res) = scratch();
    let args = [
        "minimal",
        "--d",
        "2",
        "--k",
        "3",
        "--kind",
        "dary",
        "--mode",
        "noncontiguous",
        "--format",
        "json",
    ];
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
        v["stats"]["elapsed_ms"] = Value::Null;
        v.to_string()
    };
    let first = supertree(&args, None, &res);
    assert_eq!(first.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["value"], 5);
    let cached = supertree(&args, None, &res);
    assert_eq!(stdout(&first), stdout(&cached));
    let mut one = args.to_vec();
    one.extend(["--jobs", "1", "--recompute"]);
    let mut four = args.to_vec();
    four.extend(["--jobs", "4", "--recompute"]);
    let (a, b) = (supertree(&one, None, &res), supertree(&four, None, &res));
    assert_eq!(strip(&first), strip(&a));
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(std::fs::read_to_string(&res).unwrap().lines().count(), 3);
}

#[test]
fn minimal_cap_exceeded_exits_three() {
    let (_dir, res) = scratch();
    let args = [
        "minimal",
        "--d",
        "2",
        "--k",
        "3",
        "--kind",
        "dary",
        "--mode",
        "contiguous",
        "--n-start",
        "3",
        "--n-cap",
        "5",
    ];
    assert_eq!(supertree(&args, None, &res).status.code(), Some(3));
}

#[test]
fn bounds_report_stored_exact_value() {
    let (_dir, res) = scratch();
    let q = [
        "--d",
        "2",
        "--k",
        "3",
        "--kind",
        "bracket",
        "--mode",
        "contiguous",
    ];
    let mut minimal = vec!["minimal"];
    minimal.extend(q);
    assert!(supertree(&minimal, None, &res).status.success());
    let mut bounds = vec!["bounds", "--format", "json"];
    bounds.extend(q);
    let v: Value = serde_json::from_str(&stdout(&supertree(&bounds, None, &res))).unwrap();
    assert_eq!(v["exact"], 4);
    assert_eq!(v["verdict"], true);
    assert!(v["value"].as_u64().unwrap() <= 4);
}

#[test]
fn export_dot_has_one_node_per_vertex() {
    let (_dir, res) = scratch();
    let code = "d3:((___)_(_(___)_))";
    let out = supertree(&["export-dot"], Some(code), &res);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph tree {") && dot.trim_end().ends_with('}'));
    let nodes = dot
        .lines()
        .filter(|l| l.trim().starts_with('n') && l.ends_with(';') && !l.contains(['-', '[']))
        .count();
    assert_eq!(nodes, 4);
    assert_eq!(dot.matches("->").count(), 3);
    assert!(dot.contains("[label=\"3\"]"));
}

#[test]
fn psi_and_transforms() {
    let (_dir, res) = scratch();
    let tree = stdout(&supertree(&["psi", "1632547"], None, &res));
    let back = supertree(&["psi", tree.trim()], None, &res);
    assert_eq!(stdout(&back).trim(), "1632547");
    assert_eq!(
        supertree(&["psi", "231"], None, &res).status.code(),
        Some(2)
    );

    let out = supertree(
        &["transform", "--op", "binarize", "d3:((___)(___)(___))"],
        None,
        &res,
    );
    assert_eq!(stdout(&out).trim(), "d2:(((__)(__))(__))");
    let out = supertree(
        &["transform", "--op", "expand", "--format", "json"],
        Some("b2:(()())"),
        &res,
    );
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 5);
}

#[test]
fn enumerate_lists_every_tree() {
    let (_dir, res) = scratch();
    let out = supertree(
        &["enumerate", "--kind", "dary", "--d", "3", "--k", "4"],
        None,
        &res,
    );
    assert_eq!(stdout(&out).lines().count(), 55);
}
