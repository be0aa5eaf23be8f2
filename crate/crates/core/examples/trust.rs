//! The same two clauses related four ways: by `because`, by adjacency
//! plus a defeasible rule, and each of those with `for example`. The last
//! run denies the inferred explanation and watches it being withdrawn.

use dltag::analysis::analyze;
use dltag::lexicon::default_lexicon;

const T1: &str = "CLAUSE T1 | e1:shouldnt_trust(you,j) | negative-evaluation\n";
const T2: &str = "CLAUSE T2 | e2:never_return(j,borrowed) | evidence\n";
const RULE: &str = "RULE explanation <- negative-evaluation evidence\n";

fn main() {
    let lex = default_lexicon();
    let variants = [
        ("because", format!("{T1}CONN because\n{T2}")),
        ("adjacent", format!("{T1}PUNCT .\n{T2}{RULE}")),
        ("because, for example", format!("{T1}CONN because\nCONN for example\n{T2}")),
        ("adjacent, for example", format!("{T1}PUNCT .\nCONN for example\n{T2}{RULE}")),
        (
            "adjacent, then denied",
            format!("{T1}PUNCT .\n{T2}PUNCT .\nCLAUSE T3 | e3:~(explanation(e2,e1)) | denial\n{RULE}"),
        ),
    ];
    for (name, text) in variants {
        let a = analyze(&text, &lex, None).expect("trust variants analyse");
        println!("{name:>22}: {}", a.resolved.lf.pretty_print());
        for (clause, d) in &a.resolved.denials {
            println!("{:>22}  {clause} -> {d:?}", "");
        }
    }
}
