use std::path::{Path, PathBuf};
use std::process::Command;

use prohibit_core::corpus::{by_name, claim_instances, wrap_type0};
use prohibit_core::oracle::member_slice;
use prohibit_core::{
    enumerate_words, member, parse_grammar_file, to_file_text, Budget, Claim, Grammar,
    ProhibitionGrammar,
};

fn demo(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../demos")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn prohibit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_prohibit"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write_pg(dir: &tempfile::TempDir, name: &str, pg: &ProhibitionGrammar) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, to_file_text(pg)).unwrap();
    path.to_string_lossy().into_owned()
}

fn write_text(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn member_matches_library_on_corpus_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let mut pairs: Vec<ProhibitionGrammar> = [Claim::T2, Claim::T9, Claim::P1]
        .into_iter()
        .flat_map(claim_instances)
        .collect();
    let anbn = by_name("anbn").unwrap().grammar;
    let ab = by_name("ab_only").unwrap().grammar;
    pairs.push(ProhibitionGrammar::new(wrap_type0(&anbn), ab.clone()).unwrap());
    pairs.push(ProhibitionGrammar::new(ab, wrap_type0(&anbn)).unwrap());
    for (i, pg) in pairs.iter().enumerate() {
        let path = write_pg(&dir, &format!("pair{i}.pg"), pg);
        let n = if pg.alphabet().len() > 2 { 3 } else { 4 };
        for w in enumerate_words(pg.alphabet(), n).unwrap() {
            let expected = member(pg, &w, &Budget::for_word(&w)).unwrap().verdict;
            let run = prohibit(&["member", &path, "--word", &w.to_string()]);
            assert_eq!(run.stdout, format!("{expected}\n"), "pair {i}, word {w}");
            assert_eq!(run.code, expected.exit_code());
        }
    }
}

#[test]
fn member_on_bundled_file() {
    let f = demo("anbn_minus_ab.pg");
    let f = f.to_str().unwrap();
    let run = prohibit(&["member", f, "--word", "a a b b"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "in\n"));
    let run = prohibit(&["member", f, "--word", "a b"]);
    assert_eq!((run.code, run.stdout.as_str()), (1, "not-in\n"));
    let run = prohibit(&["member", f, "--word", "eps"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "in\n"));
    let run = prohibit(&["member", f, "--word", "a c"]);
    assert_eq!(run.code, 65);
    assert!(run.stderr.contains("symbol c is not in the alphabet"));
}

#[test]
fn member_trace_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_text(
        &dir,
        "t0.pg",
        "%alphabet a\n%positive\n%start S\nS -> a S | eps\nZ Z -> eps\n",
    );
    let run = prohibit(&[
        "member", &f, "--word", "a a", "--budget", "50,10", "--trace",
    ]);
    assert_eq!(run.code, 0);
    assert!(
        run.stdout.starts_with("in\npositive: in (Type0)\n"),
        "{}",
        run.stdout
    );
    assert!(run
        .stdout
        .contains("positive derivation:\nS\na S\na a S\na a\nnegative: not-in (Type3)\n"));
    let run = prohibit(&["member", &f, "--word", "a a a a", "--budget", "2,20"]);
    assert_eq!((run.code, run.stdout.as_str()), (2, "unknown\n"));
    let run = prohibit(&["member", &f, "--word", "a", "--budget", "0,5"]);
    assert_eq!(run.code, 64);
    let run = prohibit(&["member", &f, "--word", "a", "--budget", "five"]);
    assert_eq!(run.code, 64);
}

#[test]
fn classify_output() {
    let run = prohibit(&["classify", demo("anbncn_witness.pg").to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "positive: Type3\nnegative: Type2\npair: (3,2)\nstatus: decidable\n"
    );
}

#[test]
fn construct_then_classify_and_sample() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("diff.pg");
    let out = out.to_str().unwrap();
    let run = prohibit(&[
        "construct",
        demo("reg_pair.pg").to_str().unwrap(),
        "--out",
        out,
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let run = prohibit(&["classify", out]);
    assert!(run.stdout.starts_with("positive: Type3\nnegative: Type3\n"));
    let run = prohibit(&["sample", out, "--max-len", "5"]);
    assert_eq!(run.stdout, "a\na a a\na a a a a\n");

    let src = demo("anbn_minus_ab.pg");
    let run = prohibit(&["construct", src.to_str().unwrap(), "--out", out]);
    assert_eq!(run.code, 0);
    let built = prohibit(&["sample", out, "--max-len", "8"]);
    let original = prohibit(&["sample", src.to_str().unwrap(), "--max-len", "8"]);
    assert_eq!(built.stdout, original.stdout);
    assert_eq!(built.stdout, "eps\na a b b\na a a b b b\na a a a b b b b\n");
}

#[test]
fn construct_rejects_other_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.pg");
    let run = prohibit(&[
        "construct",
        demo("anbncn_witness.pg").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 66);
    assert!(!out.exists());
}

#[test]
fn sample_matches_library() {
    for name in [
        "anbn_minus_ab.pg",
        "anbncn_witness.pg",
        "irregular_verbs.pg",
    ] {
        let path = demo(name);
        let pg = parse_grammar_file(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let run = prohibit(&["sample", path.to_str().unwrap(), "--max-len", "4"]);
        assert_eq!(run.code, 0);
        assert_eq!(
            run.stdout,
            member_slice(&pg, 4).unwrap().to_string(),
            "{name}"
        );
    }
}

#[test]
fn sample_reports_indefinite_words() {
    let dir = tempfile::tempdir().unwrap();
    // S A^k never terminates and never fixes a terminal.
    let f = write_text(
        &dir,
        "grow.pg",
        "%alphabet a b\n%positive\n%start S\nS -> S A\nA -> a\nS A -> b\nb A -> b\n",
    );
    let run = prohibit(&["sample", &f, "--max-len", "2"]);
    assert_eq!(run.code, 67, "{}{}", run.stdout, run.stderr);
    assert!(run.stderr.contains("unknown"));
}

#[test]
fn verify_reports() {
    let f = demo("anbn_minus_ab.pg");
    let f = f.to_str().unwrap();
    let run = prohibit(&["verify", f, "--claim", "T9"]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "claim: T9\ndepth: 10\ninstances: 1\ninstance 1: consistent\noutcome: consistent\n"
    );
    let run = prohibit(&["verify", f, "--claim", "t1", "--max-len", "4"]);
    assert_eq!(run.code, 66);
    let run = prohibit(&["verify", f, "--claim", "T5"]);
    assert_eq!(run.code, 64);
    let dir = tempfile::tempdir().unwrap();
    let a = by_name("anbn").unwrap().grammar;
    let empty = Grammar::empty(a.alphabet.clone());
    let g = write_pg(&dir, "t1.pg", &ProhibitionGrammar::new(a, empty).unwrap());
    let run = prohibit(&["verify", &g, "--claim", "T1", "--max-len", "6"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("depth: 6\n"));
}

#[test]
fn parse_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_text(
        &dir,
        "bad.pg",
        "%alphabet a b\n%positive\n%start S\nS -> a c\n",
    );
    let run = prohibit(&["classify", &f]);
    assert_eq!(run.code, 65);
    assert!(run.stderr.contains("line 4"), "{}", run.stderr);
    let run = prohibit(&["classify", "/nonexistent/file.pg"]);
    assert_eq!(run.code, 65);
    assert_eq!(prohibit(&["frobnicate"]).code, 64);
    assert_eq!(prohibit(&[]).code, 64);
    assert_eq!(prohibit(&["member", &f]).code, 64);
    let help = prohibit(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("construct"));
}

#[test]
fn demo_output_is_stable() {
    let run = prohibit(&["demo"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, include_str!("golden/demo.txt"));
}

#[test]
fn in_process_run_matches_binary() {
    let f = demo("anbn_minus_ab.pg");
    let args = [
        "prohibit",
        "member",
        f.to_str().unwrap(),
        "--word",
        "a a b b",
    ];
    let inproc = prohibit_cli::run(args);
    let bin = prohibit(&args[1..]);
    assert_eq!((inproc.code, inproc.stdout), (bin.code, bin.stdout));
}
