//! `for example` contributes two trees: one on its own clause and one on
//! the enclosing relation, which it turns into an abstraction.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

fn show(title: &str, text: &str) {
    let a = analyze(text, &default_lexicon(), None).expect("analysis succeeds");
    println!("-- {title}");
    print!("{}", a.derivation.dump());
    println!("{}\n", a.resolved.lf.pretty_print());
}

fn main() {
    show(
        "over a subordinating conjunction",
        "CLAUSE T1 | e1:shouldnt_trust(you,j)\nCONN because\nCONN for example\nCLAUSE T2 | e2:never_return(j,borrowed)\n",
    );
    show(
        "over a coordinating conjunction",
        "CLAUSE T1 | e1:rain(now)\nCONN so\nCONN for example\nCLAUSE T2 | e2:cancel(match1)\n",
    );
    // Scoping over another adverbial: the abstraction waits for `then` to
    // be resolved.
    show("over `then`", include_str!("../corpus/lincoln.disc"));
}
