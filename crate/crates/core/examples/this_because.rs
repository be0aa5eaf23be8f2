//! A demonstrative pronoun standing for an earlier clause: once `this` is
//! resolved, the relation is the one the plain `because` version has.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

fn main() {
    let lex = default_lexicon();
    for name in ["this-because-a", "this-because-b", "this-because-negated"] {
        let path = format!("{}/corpus/{name}.disc", env!("CARGO_MANIFEST_DIR"));
        let a = analyze(&std::fs::read_to_string(path).unwrap(), &lex, None).expect("analysis succeeds");
        println!("{name:<22} {}", a.resolved.lf.pretty_print());
        print!("{}", a.resolved.render_trace());
    }
}
