use super::{Arg, DefeasibleRule, Formula, Item, LogicalForm, Term};

pub(crate) fn render_arg(a: &Arg) -> String {
    match a {
        Arg::Event(l) => l.to_string(),
        Arg::Ind(s) | Arg::Var(s) => s.clone(),
        Arg::Lambda(l) => format!("\\{}.{}", l.bound, render_term(&l.body)),
        Arg::Term(t) => render_term(t),
    }
}

fn render_label(label: &Option<Arg>) -> String {
    match label {
        Some(l) => format!("{}:", render_arg(l)),
        None => String::new(),
    }
}

pub fn render_term(t: &Term) -> String {
    let args: Vec<String> = t.args.iter().map(render_arg).collect();
    format!("{}{}({})", render_label(&t.label), t.pred, args.join(","))
}

pub(crate) fn render_formula(f: &Formula) -> String {
    match f {
        Formula::Atom(t) => render_term(t),
        Formula::Not { label, inner } => format!("{}~({})", render_label(label), render_formula(inner)),
        Formula::Eq(a, b) => format!("{} = {}", render_arg(a), render_arg(b)),
        Formula::And(fs) => {
            let parts: Vec<String> = fs.iter().map(render_formula).collect();
            format!("({})", parts.join(" ^ "))
        }
    }
}

fn render_rule(r: &DefeasibleRule) -> String {
    format!("{} > {}", render_formula(&r.antecedent), render_formula(&r.consequent))
}

pub fn render_item(i: &Item) -> String {
    match i {
        Item::Formula(f) => render_formula(f),
        Item::Rule(r) => render_rule(r),
    }
}

type SortKey = (u8, (String, u64, String), String);

/// Labelled items in label order, then unlabelled formulas by predicate and
/// text, then rules.
pub(crate) fn render_lf(lf: &LogicalForm) -> String {
    let mut keyed: Vec<(SortKey, String)> = lf
        .items
        .iter()
        .map(|item| {
            let text = render_item(item);
            let key = match item {
                Item::Formula(f) => match f.event_label() {
                    Some(l) => (0, l.sort_key(), text.clone()),
                    None => (1, Default::default(), text.clone()),
                },
                Item::Rule(_) => (2, Default::default(), text.clone()),
            };
            (key, text)
        })
        .collect();
    keyed.sort();
    keyed.dedup();
    keyed.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join(" ^ ")
}
