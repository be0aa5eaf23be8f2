//! Elementary trees and the two combining operations, by hand.

use dltag::grammar::{adjoin, clause_tree, instantiate, substitute};

fn main() {
    let because = instantiate("subconj-mid", &["because"]).unwrap();
    println!("{:<14} {}", because.id, because.root.bracketing());
    let sites = because.substitution_sites();
    println!("sites: {}", sites.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "));

    let mut tree = because.root.clone();
    for (addr, id) in sites.iter().zip(["T1", "T2"]) {
        tree = substitute(&tree, addr, &clause_tree(id).root).unwrap();
    }
    println!("substituted:   {}", tree.bracketing());

    let punct = instantiate("punct-aux", &["."]).unwrap();
    let mut aux = punct.root.clone();
    let site = punct.substitution_sites()[0].clone();
    aux = substitute(&aux, &site, &clause_tree("T3").root).unwrap();
    let whole = adjoin(&tree, &dltag::grammar::Address::root(), &aux).unwrap();
    println!("adjoined:      {}", whole.bracketing());
    println!("yield:         {}", whole.clause_yield().join(" "));
}
