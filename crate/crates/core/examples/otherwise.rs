//! `otherwise` relates its clause to the complement of an earlier one.
//! Which one depends on a compatibility preference: the same discourse is
//! resolved under each, and once with none to show the full candidate set.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

const TEXT: &str = "\
CONN if
CLAUSE T1 | e1:red(light1) | condition, state
CLAUSE T2 | e2:stop(you) | action
PUNCT .
CONN otherwise
CLAUSE T3 | e3:get_ticket(you)
";

fn main() {
    let lex = default_lexicon();
    for compat in [None, Some("prefer-action"), Some("prefer-condition")] {
        let a = analyze(TEXT, &lex, compat).expect("analysis succeeds");
        let r = &a.resolved.resolutions[0];
        let cands: Vec<String> = r.candidates.iter().map(|c| c.to_string()).collect();
        println!("compat {:<17} candidates {:<16} -> {}", compat.unwrap_or("(none)"), cands.join(" "), a.resolved.lf.pretty_print());
    }

    println!();
    for name in ["because-otherwise", "and-otherwise", "pear"] {
        let text = std::fs::read_to_string(format!("{}/corpus/{name}.disc", env!("CARGO_MANIFEST_DIR"))).unwrap();
        let a = analyze(&text, &lex, None).expect("corpus file analyses");
        println!("{name}: {}", a.resolved.lf.pretty_print());
    }
}
