//! Extending the connective inventory from a lexicon document.

use dltag::analysis::analyze;
use dltag::lexicon::load_lexicon;

const EXTRA: &str = "\
# surface | class | relation | treeFamily | constraint | case | flags
hence     | coord     | result  | coord-initial | -   | -     | -
thereupon | adverbial | after   | adverbial-aux | any | case1 | -
";

fn main() {
    let lex = load_lexicon(EXTRA).expect("lexicon loads");
    for e in lex.lookup("hence").into_iter().chain(lex.lookup("thereupon")) {
        println!("{} -> {} ({:?})", e.surface, e.relation, e.tree_family);
    }
    let text = "CLAUSE T1 | e1:rain(now)\nCONN hence\nCLAUSE T2 | e2:wet(street)\nPUNCT .\nCONN thereupon\nCLAUSE T3 | e3:dry(street)\n";
    let a = analyze(text, &lex, None).expect("analysis succeeds");
    println!("{}", a.resolved.lf.pretty_print());
}
