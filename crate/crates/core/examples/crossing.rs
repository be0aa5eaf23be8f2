//! Structural dependencies may nest but not cross; anaphoric ones may.
//! Hand-given links show a violation, derived graphs show the exemption.

use dltag::analysis::crossing_graph;
use dltag::derivation::graph::check_no_crossing;
use dltag::lexicon::default_lexicon;

fn main() {
    let lex = default_lexicon();
    for name in ["crossed-although", "uncrossed-although", "crossed-paired", "uncrossed-paired", "barolo", "shoezoo", "sickzoo"] {
        let path = format!("{}/corpus/{name}.disc", env!("CARGO_MANIFEST_DIR"));
        let (_, g) = crossing_graph(&std::fs::read_to_string(path).unwrap(), &lex, None).expect("graph builds");
        let r = check_no_crossing(&g);
        println!("{name:<20} violations {}  anaphoric crossings {}", r.violations.len(), r.exempt.len());
        for (a, b) in &r.violations {
            println!("{:<20} {a}  x  {b}", "");
        }
    }
}
