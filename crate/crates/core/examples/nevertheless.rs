//! Adverbials like `nevertheless` add no relation of their own. They
//! presuppose a defeasible rule whose conclusion the discourse contradicts.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

fn main() {
    let lex = default_lexicon();
    for name in ["nevertheless-while", "nevertheless-after", "nevertheless-adjacent", "recycled"] {
        let path = format!("{}/corpus/{name}.disc", env!("CARGO_MANIFEST_DIR"));
        let text = std::fs::read_to_string(path).unwrap();
        let a = analyze(&text, &lex, None).expect("analysis succeeds");
        println!("{name}");
        println!("  composed: {}", a.interpretation.lf.pretty_print());
        println!("  resolved: {}", a.resolved.lf.pretty_print());
    }
}
