//! Four sentences, three structural relations and one `then` whose
//! antecedent has to be a culminated eventuality.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

fn main() {
    let text = include_str!("../corpus/barolo.disc");
    let a = analyze(text, &default_lexicon(), None).expect("barolo analyses");

    println!("derivation:\n{}", a.derivation.dump());
    println!("composition:\n{}", a.interpretation.render_trace());
    println!("composed: {}\n", a.interpretation.lf.pretty_print());
    for r in &a.resolved.resolutions {
        println!("{r}");
    }
    println!("\nresolved: {}", a.resolved.lf.pretty_print());
    println!("\n{}", a.dependency_graph().render_report());
}
