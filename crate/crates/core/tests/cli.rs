use std::fs;
use std::path::Path;

use dltag::cli::{run, EXIT_ANALYSIS, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

const TRUST: &str = "CLAUSE T1 | e1:shouldnt_trust(you,j)\nCONN because\nCLAUSE T2 | e2:never_return(j,borrowed)\n";

fn dltag(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("dltag").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn resolve_prints_the_lf() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "trust.disc", TRUST);
    let (code, out, _) = dltag(&[&input]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "e1:shouldnt_trust(you,j) ^ e2:never_return(j,borrowed) ^ i1:explanation(e2,e1)\n");
}

#[test]
fn several_emits_get_headers() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "trust.disc", TRUST);
    let (code, out, _) = dltag(&["--mode", "derive", "--emit", "derivation,derived-dot", &input]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("== derivation\nα:because-mid\n"), "{out}");
    assert!(out.contains("== derived-dot\ndigraph"), "{out}");
}

#[test]
fn out_writes_one_file_per_emit() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(dir.path(), "trust.disc", TRUST);
    let out_dir = dir.path().join("out");
    let (code, out, _) =
        dltag(&["--emit", "lf,trace,graph-dot", "--out", out_dir.to_str().unwrap(), &input]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    for ext in ["lf", "trace", "graph.dot"] {
        assert!(out_dir.join(format!("trust.{ext}")).exists(), "{ext}");
    }
}

#[test]
fn compose_leaves_variables_open() {
    let dir = tempfile::tempdir().unwrap();
    let input = file(
        dir.path(),
        "then.disc",
        "CLAUSE T1 | e1:arrive(j) | culminated\nPUNCT .\nCONN then\nCLAUSE T2 | e2:leave(j)\n",
    );
    let (_, composed, _) = dltag(&["--mode", "compose", &input]);
    assert!(composed.contains("after(e2,EV)"), "{composed}");
    let (_, resolved, _) = dltag(&[&input]);
    assert!(resolved.contains("after(e2,e1)"), "{resolved}");
}

#[test]
fn errors_map_to_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = file(dir.path(), "empty.disc", "");
    let (code, _, err) = dltag(&[&empty]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("empty"), "{err}");

    let (code, _, _) = dltag(&["--mode", "sideways", &empty]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = dltag(&[]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, err) = dltag(&[dir.path().join("missing.disc").to_str().unwrap()]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("missing.disc"), "{err}");

    let unknown = file(dir.path(), "u.disc", "CLAUSE T1 | e1:p(a)\nCONN hitherto\nCLAUSE T2 | e2:q(a)\n");
    let (code, _, err) = dltag(&[&unknown]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(err.contains("hitherto"), "{err}");
}

#[test]
fn crossing_violations_fail_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let crossed = file(
        dir.path(),
        "x.disc",
        "CLAUSE T1 | e1:p(a)\nCLAUSE T2 | e2:q(a)\nCLAUSE T3 | e3:r(a)\nCLAUSE T4 | e4:s(a)\n\
         LINK T1 T3 structural\nLINK T2 T4 structural\n",
    );
    let (code, out, _) = dltag(&["--mode", "check-crossing", &crossed]);
    assert_eq!(code, EXIT_ANALYSIS);
    assert!(out.contains("violations: 1"), "{out}");

    let fine = file(dir.path(), "ok.disc", TRUST);
    let (code, out, _) = dltag(&["--mode", "check-crossing", &fine]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("violations: 0"), "{out}");
}

#[test]
fn lexicon_option_adds_entries() {
    let dir = tempfile::tempdir().unwrap();
    let lex = file(dir.path(), "extra.lex", "hence | coord | result | coord-initial | - | - | -\n");
    let input = file(dir.path(), "h.disc", "CLAUSE T1 | e1:p(a)\nCONN hence\nCLAUSE T2 | e2:q(a)\n");
    let (code, _, _) = dltag(&[&input]);
    assert_eq!(code, EXIT_ANALYSIS);
    let (code, out, err) = dltag(&["--lexicon", &lex, &input]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "e1:p(a) ^ e2:q(a) ^ i1:result(e2,e1)\n");
}

#[test]
fn corpus_mode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    file(dir.path(), "trust.disc", TRUST);
    let d = dir.path().to_str().unwrap();

    let (code, out, _) = dltag(&["--mode", "corpus", d]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("trust.lf: missing golden"), "{out}");

    let (code, _, _) = dltag(&["--mode", "corpus", "--bless", d]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = dltag(&["--mode", "corpus", d]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out, "1 files, 0 failures\n");

    fs::write(dir.path().join("trust.lf"), "e1:other(x)\n").unwrap();
    let (code, out, _) = dltag(&["--mode", "corpus", d]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("line 1: expected \"e1:other(x)\""), "{out}");

    dltag(&["--mode", "corpus", "--bless", d]);
    file(dir.path(), "orphan.lf", "e1:p(a)\n");
    let (code, out, _) = dltag(&["--mode", "corpus", d]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("orphan.lf: golden without a matching input"), "{out}");
}

#[test]
fn shipped_corpus_matches() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let (code, out, _) = dltag(&["--mode", "corpus", dir.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
}
