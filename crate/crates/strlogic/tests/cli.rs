use std::path::PathBuf;

use serde_json::Value;
use strlogic::cli::{run, SCHEMA};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn strlogic(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("strlogic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Compares `--json` output with `tests/golden/<name>.json`. Setting
/// `STRLOGIC_BLESS=1` rewrites the file instead.
fn golden(name: &str, args: &[&str], code: i32) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let (got_code, out, err) = strlogic(&argv);
    assert_eq!(got_code, code, "{err}");
    let got: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(got["schema"], SCHEMA);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("STRLOGIC_BLESS").is_some() {
        std::fs::write(&path, serde_json::to_string_pretty(&got).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(got, want, "{name}");
}

#[test]
fn eval_exists_a() {
    let (code, out, _) = strlogic(&["eval", "--formula", &fixture("exists_a.fol"), "--word", "ab"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));
    let (code, out, _) = strlogic(&["eval", "--formula", &fixture("exists_a.fol"), "--word", "bb"]);
    assert_eq!((code, out.as_str()), (1, "false\n"));
}

#[test]
fn eval_with_assignment() {
    let args = ["eval", "-e", "P_a(x) & x < y", "-w", "aba", "--assign", "x=1,y=3"];
    assert_eq!(strlogic(&args).0, 0);
    let args = ["eval", "-e", "P_a(x) & x < y", "-w", "aba", "--assign", "x=2,y=3"];
    assert_eq!(strlogic(&args).0, 1);
    let (code, _, err) = strlogic(&["eval", "-e", "P_a(x)", "-w", "ab"]);
    assert_eq!(code, 3);
    assert!(err.contains("`x`"), "{err}");
}

#[test]
fn aperiodic_parity_is_false() {
    let (code, out, _) = strlogic(&["aperiodic", "-a", &fixture("parity.dfa")]);
    assert_eq!((code, out.as_str()), (1, "false\n"));
    let (code, out, _) = strlogic(&["aperiodic", "-a", &fixture("ends_b.nfa"), "--check-len", "4"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));
}

#[test]
fn transform_prints_the_image() {
    let (code, out, _) = strlogic(&["transform", "-e", "Q[Maj] x. P_a(x)", "-w", "abb", "--sigma", "(a,b)"]);
    assert_eq!((code, out.as_str()), (0, "100\n"));
}

#[test]
fn grammar_and_groupoid_membership() {
    let g = fixture("dyck1.cfg");
    assert_eq!(strlogic(&["cfl", "member", "-g", &g, "-w", "(())"]).0, 0);
    assert_eq!(strlogic(&["cfl", "member", "-g", &g, "-w", "())("]).0, 1);
    let (code, out, _) = strlogic(&["cfl", "cnf", "-g", &g]);
    assert_eq!(code, 0);
    assert!(out.starts_with("terminals: ((,))\nstart: S\n"), "{out}");
    let (code, out, _) = strlogic(&["wp", "-g", &fixture("z2.gpd"), "-w", "aa", "--products"]);
    assert_eq!((code, out.as_str()), (1, "false\nproducts: b\n"));
    assert_eq!(strlogic(&["wp", "-g", &fixture("z2.gpd"), "-w", "aaa"]).0, 0);
}

#[test]
fn grammar_to_groupoid_text_reloads() {
    let (code, out, _) = strlogic(&["cfl", "groupoid", "-g", &fixture("dyck1.cfg")]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dyck.gpd");
    std::fs::write(&path, &out).unwrap();
    let letters = out.lines().next().unwrap();
    assert_eq!(letters, "# letters: (=a )=b");
    let path = path.display().to_string();
    assert_eq!(strlogic(&["wp", "-g", &path, "-w", "aabb"]).0, 0);
    assert_eq!(strlogic(&["wp", "-g", &path, "-w", "abba"]).0, 1);
}

#[test]
fn compile_then_run_transducer() {
    let dir = tempfile::tempdir().unwrap();
    let nft = dir.path().join("m.nft").display().to_string();
    let args = ["compile-fo", "-f", &fixture("a_before_b.fol"), "--sigma", "(a,b)", "--gamma", "(1,0)", "-o", &nft];
    let (code, _, err) = strlogic(&args);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = strlogic(&["xduce", "-m", &nft, "-w", "abab"]);
    assert_eq!((code, out.as_str()), (0, "1010\n"));
    let (code, out, _) = strlogic(&["xduce", "-m", &nft, "-w", "aaba"]);
    assert_eq!((code, out.as_str()), (0, "1100\n"));
}

#[test]
fn type_budget_from_environment() {
    // The rank-1 type monoid over two letters has more than ten elements.
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_strlogic"))
        .args(["compile-fo", "-f", &fixture("a_before_b.fol"), "--sigma", "(a,b)", "--gamma", "(1,0)"])
        .env("STRLOGIC_TYPE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn nivat_with_named_language() {
    let (code, out, _) = strlogic(&["nivat", "-f", &fixture("body_a.fol"), "-B", "maj", "--check", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("star-free: true"), "{out}");
    assert!(out.contains("agrees"), "{out}");
    let (code, out, _) = strlogic(&["nivat", "-f", &fixture("maj_a.fol"), "--check", "5"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(strlogic(&["nivat", "-f", &fixture("body_a.fol"), "-B", "nosuch"]).0, 3);
}

#[test]
fn user_languages() {
    let args = ["--lang", &format!("D={}", fixture("dyck1.cfg")), "eval", "-e", "Q[D] x. P_a(x)", "-w", "ab", "--sigma", "(a,b)"];
    let (code, out, err) = strlogic(&args);
    assert_eq!((code, out.as_str()), (0, "true\n"), "{err}");
    let args = ["--lang", &format!("D={}", fixture("dyck1.cfg")), "eval", "-e", "Q[D] x. P_a(x)", "-w", "ba", "--sigma", "(a,b)"];
    assert_eq!(strlogic(&args).0, 1);
    assert_eq!(strlogic(&["--lang", "oops", "eval", "-e", "true", "-w", "a"]).0, 2);
}

#[test]
fn witnesses() {
    assert_eq!(strlogic(&["witness", "lm", "0011001100", "-l", "5", "-m", "2"]).0, 0);
    assert_eq!(strlogic(&["witness", "lm", "0011001100", "-l", "2", "-m", "2"]).0, 1);
    let (code, out, _) = strlogic(&["witness", "lm", "0011001100", "-l", "2", "-m", "4"]);
    assert_eq!(code, 0);
    let blocks: Vec<(&str, usize)> = out
        .split_whitespace()
        .map(|b| {
            let (unit, count) = b.trim_start_matches('(').split_once(")^").unwrap();
            (unit, count.parse().unwrap())
        })
        .collect();
    assert!(blocks.len() <= 2 && blocks.iter().all(|(u, _)| u.len() <= 4), "{out}");
    assert_eq!(blocks.iter().map(|(u, c)| u.repeat(*c)).collect::<String>(), "0011001100");
    let (code, out, _) = strlogic(&["witness", "ww", "-w", "abba"]);
    assert_eq!((code, out.as_str()), (1, "ww: false\ncomplement grammar: true\n"));
    let (code, out, _) = strlogic(&["witness", "tphi", "-f", &fixture("even.fol")]);
    assert_eq!(code, 0);
    assert!(out.ends_with("minimal: (2,2)\n"), "{out}");
    assert_eq!(strlogic(&["witness", "squares", "-n", "60"]).0, 0);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(strlogic(&["frobnicate"]).0, 2);
    assert_eq!(strlogic(&["eval", "--word", "ab"]).0, 2);
    assert_eq!(strlogic(&["eval", "-e", "P_a(x", "-w", "a"]).0, 3);
    assert_eq!(strlogic(&["eval", "-f", "/nonexistent.fol", "-w", "a"]).0, 3);
    assert_eq!(strlogic(&["aperiodic", "-a", &fixture("z2.gpd")]).0, 3);
    let (code, out, _) = strlogic(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("selftest"));
}

#[test]
fn exit_codes_are_stable() {
    let args = ["eval", "--formula", &fixture("exists_a.fol"), "--word", "ab"];
    let first = strlogic(&args);
    for _ in 0..3 {
        assert_eq!(strlogic(&args), first);
    }
}

#[test]
fn selftest_subset() {
    let (code, out, _) = strlogic(&["selftest", "--max-len", "4", "--only", "2,3,10"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().count(), 4);
    assert!(out.ends_with("3/3 criteria passed\n"));
    assert_eq!(strlogic(&["selftest", "--only", "12"]).0, 2);
}

#[test]
fn golden_json() {
    golden("eval", &["eval", "--formula", &fixture("exists_a.fol"), "--word", "ab"], 0);
    golden("aperiodic", &["aperiodic", "-a", &fixture("parity.dfa"), "--check-len", "4"], 1);
    golden("wp", &["wp", "-g", &fixture("z2.gpd"), "-w", "aaa", "--products"], 0);
    golden("nivat", &["nivat", "-f", &fixture("maj_a.fol"), "--check", "6"], 0);
    golden("lm", &["witness", "lm", "0110", "-l", "2", "-m", "2", "--w", "1100", "--l2", "2", "--m2", "1"], 0);
    golden("tphi", &["witness", "tphi", "-f", &fixture("even.fol"), "--n-max", "12", "--m-cap", "3"], 0);
    golden("ww", &["witness", "ww", "-w", "abab"], 0);
}
