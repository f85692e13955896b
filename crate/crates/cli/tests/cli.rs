//! End-to-end runs of the `linvol` binary on fixture specs.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn linvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linvol")).args(args).output().expect("binary runs")
}

fn golden(args: &[&str]) -> Output {
    let spec = fixture("golden.spec");
    let mut full = vec![args[0], spec.to_str().unwrap()];
    full.extend_from_slice(&args[1..]);
    linvol(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> BTreeSet<String> {
    stdout(o).lines().map(str::to_string).collect()
}

fn set(words: &[&str]) -> BTreeSet<String> {
    words.iter().map(|w| w.to_string()).collect()
}

#[test]
fn info_classifies_the_golden_involution() {
    let o = golden(&["info"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("nonorientable, coherent, k=3, even letters: a"));
    assert!(stdout(&o).contains("connection: none within 256 steps"));
}

#[test]
fn mixed_returns_to_c() {
    let o = golden(&["returns", "--word", "c", "--kind", "mixed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o), set(&["bAc", "b", "B", "CaBc", "CaB", "CbAc"]));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn complete_returns_to_a() {
    let o = golden(&["returns", "--word", "a"]);
    assert_eq!(lines(&o), set(&["aBcbA", "aBcbCa", "AcBCa", "aBCbA", "AcbCa", "AcBCbA"]));
}

#[test]
fn right_and_left_returns_run() {
    for kind in ["right", "left"] {
        let o = golden(&["returns", "--word", "a", "--kind", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
        assert!(!stdout(&o).is_empty());
    }
}

#[test]
fn prime_words_of_the_even_group() {
    let o = golden(&["prime"]);
    assert_eq!(o.status.code(), Some(0));
    let mut expected = set(&["a", "bAc", "bC", "BC", "Bc"]);
    expected.extend(set(&["A", "CaB", "cB", "cb", "Cb"]));
    assert_eq!(lines(&o), expected);
}

#[test]
fn prime_words_of_a_subgroup_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("whole.graph");
    std::fs::write(&path, "vertices 1\nbase 0\nedge 0 a 0\nedge 0 b 0\nedge 0 c 0\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = golden(&["prime", "--subgroup", &arg]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(lines(&o), set(&["a", "b", "c", "A", "B", "C"]));

    std::fs::write(&path, "vertices 1\nbase 0\nedge 0 a 0\n").unwrap();
    assert_eq!(golden(&["prime", "--subgroup", &arg]).status.code(), Some(2));
}

#[test]
fn verify_checks_pass_on_golden() {
    let o = golden(&["verify", "--check", "returns", "--max-word-len", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("returns: 96 passed, 0 failed, 0 skipped\n"));
    for check in ["group", "cardinality", "inverse-interval"] {
        let o = golden(&["verify", "--check", check]);
        assert_eq!(o.status.code(), Some(0), "{check}");
        assert!(stdout(&o).contains(" 0 failed, 0 skipped"), "{check}");
    }
}

#[test]
fn verify_reports_skips_and_fails() {
    let spec = fixture("golden.spec");
    let o = linvol(&["--horizon", "3", "verify", spec.to_str().unwrap(), "--check", "returns", "--max-word-len", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("SKIP ")));
    assert!(out.lines().last().unwrap().contains("skipped") && !out.contains(" 0 skipped"));
}

#[test]
fn rauzy_prints_both_substitutions() {
    let o = golden(&["rauzy", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("permutation: a A b B / c C"));
    assert!(out.contains("substitution: a -> aB, b -> b, c -> c"));
    assert!(out.contains("substitution: a -> a, b -> bC, c -> c"));
    assert!(out.contains("interval length: -1/2 + 1/2*sqrt5"));
}

#[test]
fn induce_on_a_word() {
    let o = golden(&["induce", "--word", "A"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("letters: a -> BCb, b -> BcbCa, c -> AcBCa"));
}

#[test]
fn language_lists_short_words() {
    let o = golden(&["language", "--max-len", "1"]);
    assert_eq!(stdout(&o), "1\na\nb\nc\nA\nB\nC\n");
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("golden.svg");
    let o = golden(&["render", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches("<rect").count(), 6);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [&["info"][..], &["returns", "--word", "bA", "--kind", "mixed"], &["rauzy", "--steps", "2"]] {
        assert_eq!(golden(args).stdout, golden(args).stdout, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "[involution]\nalphabet = \"ab\"\n").unwrap();
    assert_eq!(linvol(&["info", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(linvol(&["info", "/nonexistent.spec"]).status.code(), Some(2));
    assert_eq!(golden(&["returns", "--word", "aa"]).status.code(), Some(2));
    assert_eq!(golden(&["returns", "--word", "aA"]).status.code(), Some(2));

    let periodic = fixture("periodic.spec");
    let o = linvol(&["returns", periodic.to_str().unwrap(), "--word", "a"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("connection"));
    let o = linvol(&["info", periodic.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("nonorientable, noncoherent, k=4"));
}
