//! Graphviz output for the derivation tree, the derived tree and the
//! dependency graph. Pipe into `dot -Tsvg`.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "derivation".into());
    let a = analyze(include_str!("../corpus/barolo.disc"), &default_lexicon(), None).expect("barolo analyses");
    let dot = match which.as_str() {
        "derivation" => a.derivation.to_dot(),
        "derived" => a.derivation.replay().expect("replays").to_dot("barolo"),
        "graph" => a.dependency_graph().to_dot(&a.discourse.tokens),
        other => {
            eprintln!("unknown view `{other}`; use derivation, derived or graph");
            std::process::exit(1);
        }
    };
    print!("{dot}");
}
