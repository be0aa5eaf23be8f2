//! Working with logical forms directly: parsing, abstraction,
//! beta-reduction and anaphoric variables.

use dltag::lf::{abstract_relation, beta_reduce, parse_lf, render_term, ArgSlot, EventLabel};

fn main() {
    let mut lf = parse_lf("e1:love(j,barolo) ^ e2:order(j,c1) ^ i1:result(e2,e1) ^ i2:after(e2,EV)").unwrap();
    println!("parsed:      {}", lf.pretty_print());

    let rel = lf.term_by_label(&EventLabel::new("i1")).unwrap().clone();
    let abs = abstract_relation(&rel, ArgSlot::First).unwrap();
    println!("abstracted:  \\{}.{}", abs.bound, render_term(&abs.body));
    println!("applied:     {}", render_term(&beta_reduce(&abs, &EventLabel::new("e2"))));

    lf.declare_var(dltag::lf::AnaphoricVar::new("EV", dltag::lf::VarKind::AdverbialAntecedent));
    println!("unresolved:  {:?}", lf.unresolved().iter().map(|v| &v.name).collect::<Vec<_>>());
    let lf = lf.resolve_var("EV", &EventLabel::new("e1")).unwrap();
    println!("resolved:    {}", lf.pretty_print());
    println!("unresolved:  {}", lf.unresolved().len());

    let rules = parse_lf("(during(X,E) ^ E:discuss(Y,politics)) > ~(X:think_about(Y,fish))").unwrap();
    println!("rule:        {}", rules.pretty_print());
}
