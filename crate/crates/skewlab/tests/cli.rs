//! Exit-code and output contract of the command-line binary.

use std::process::{Command, Output};

fn skewlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewlab")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn check_holds_exits_zero() {
    let out = skewlab(&["check", "--ring", "z6", "--sigma", "id", "--module", "regular", "--props", "pp,pq-baer"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("pp holds"), "{text}");
    assert!(text.contains("pq-baer holds"), "{text}");
}

#[test]
fn check_failure_exits_two_with_witness() {
    let out = skewlab(&["check", "--ring", "z4", "--props", "pp"]);
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("fails"), "{text}");
    assert!(text.contains("r(2)"), "{text}");
}

#[test]
fn unknown_property_is_usage_error() {
    let out = skewlab(&["check", "--ring", "z6", "--props", "bogus"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("pq-baer"), "usage error should list valid ids");
}

#[test]
fn unknown_ring_is_usage_error() {
    let out = skewlab(&["hunt", "lemma_2_2", "--ring", "nonexistent"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("nonexistent"));
}

#[test]
fn unknown_theorem_is_usage_error() {
    let out = skewlab(&["hunt", "thm_9_9", "--all"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("lemma_2_2"));
}

#[test]
fn inconclusive_only_exits_three() {
    let out = skewlab(&[
        "check", "--ring", "z6", "--props", "sigma-skew-armendariz", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn budget_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_skewlab"))
        .args(["check", "--ring", "z6", "--props", "sigma-skew-armendariz"])
        .env("SKEWLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // an explicit --budget overrides the environment
    let out = Command::new(env!("CARGO_BIN_EXE_skewlab"))
        .args(["check", "--ring", "z6", "--props", "sigma-skew-armendariz", "--budget", "100000000"])
        .env("SKEWLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hunt_full_catalog_no_refutation() {
    let out = skewlab(&["hunt", "lemma_2_2", "--all", "--degree", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("0 REFUTED"));
}

#[test]
fn suite_json_round_trips() {
    let out = skewlab(&["suite", "--ring", "z6", "--degree", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = 0;
    for line in text.lines() {
        let report: skewlab::theorems::TheoremReport = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&report).unwrap(), line, "round trip must be byte-identical");
        lines += 1;
    }
    assert_eq!(lines, 15);
}

#[test]
fn catalog_dump_reloads_through_defs() {
    let out = skewlab(&["catalog", "dump", "z6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("ring z6 6\n"));
    // rename so the reload does not clash with the builtin id
    let renamed = text.replace("z6", "w6");
    let dir = std::env::temp_dir().join(format!("skewlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("w6.defs");
    std::fs::write(&path, renamed).unwrap();
    let out = skewlab(&[
        "check", "--defs", path.to_str().unwrap(), "--ring", "w6", "--props", "pp,pq-baer",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // a clashing id is rejected as a usage error
    let clash = dir.join("z6.defs");
    std::fs::write(&clash, stdout(&skewlab(&["catalog", "dump", "z6"]))).unwrap();
    let out = skewlab(&["catalog", "list", "--defs", clash.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(64));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn ann_command_reports_generators() {
    let out = skewlab(&["ann", "--ring", "z6", "--element", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("r(2) = [0, 3]"), "{text}");
    assert!(text.contains("r(2R) = [0, 3]"), "{text}");
    assert!(text.contains("e=3"), "{text}");
}

#[test]
fn idempotents_command() {
    let out = skewlab(&["idempotents", "--ring", "z6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[0, 1, 3, 4]"));
}

#[test]
fn check_json_is_sorted_and_parseable() {
    let out = skewlab(&[
        "check", "--all", "--props", "compatible", "--format", "json", "--degree", "0",
    ]);
    assert_eq!(out.status.code(), Some(2), "swap instances break compatibility");
    let text = stdout(&out);
    let instances: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["instance"]
            .as_str()
            .unwrap()
            .to_string())
        .collect();
    let mut sorted = instances.clone();
    sorted.sort();
    assert_eq!(instances, sorted);
}

#[test]
fn exit_codes_do_not_depend_on_format() {
    for format in ["text", "json"] {
        let out = skewlab(&["check", "--ring", "z4", "--props", "pp", "--format", format]);
        assert_eq!(out.status.code(), Some(2), "format {format}");
    }
}
