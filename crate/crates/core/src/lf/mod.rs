//! Flat, Hobbs-style logical forms over labelled eventualities.
//!
//! Every clause and every relation between clauses is indexed by the label
//! of its abstract object (`e1:left(j)`, `i3:elaboration(i2,i1)`). Anaphoric
//! arguments of discourse adverbials stay as named variables (`EV`, `VE`,
//! `DPRO`) until the resolver binds them.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use parse::{parse_formula, parse_lf, parse_lf_items, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LfError {
    #[error("unknown or already resolved variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown target label `{0}`")]
    UnknownTarget(String),
    #[error("cannot abstract over non-binary term `{0}`")]
    NonBinary(String),
}

/// Label of an abstract object: `e4`, `i2`, `e3'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventLabel(String);

impl EventLabel {
    pub fn new(s: impl Into<String>) -> Self {
        EventLabel(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Splits `e12'` into `("e", Some(12), "'")`.
    pub fn parts(&self) -> (&str, Option<u64>, &str) {
        let s = self.0.as_str();
        let digits_start = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (prefix, rest) = s.split_at(digits_start);
        let digits_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let (num, suffix) = rest.split_at(digits_end);
        (prefix, num.parse().ok(), suffix)
    }

    pub(crate) fn sort_key(&self) -> (String, u64, String) {
        let (p, n, s) = self.parts();
        (p.to_string(), n.unwrap_or(0), s.to_string())
    }

    /// Whether a bare identifier reads as an event label in LF text.
    pub fn is_label_token(s: &str) -> bool {
        let l = EventLabel::new(s);
        let (prefix, num, suffix) = l.parts();
        (prefix == "e" || prefix == "i") && num.is_some() && suffix.chars().all(|c| c == '\'')
    }
}

impl fmt::Display for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Per-analysis label source. Counters are monotone per prefix and skip
/// labels that were already claimed (e.g. supplied on input clauses).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelGen {
    counters: BTreeMap<String, u64>,
    used: BTreeSet<EventLabel>,
}

impl LabelGen {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_counter(&mut self, prefix: &str, value: u64) {
        self.counters.insert(prefix.to_string(), value);
    }

    pub fn counter(&self, prefix: &str) -> u64 {
        self.counters.get(prefix).copied().unwrap_or(0)
    }

    pub fn fresh_label(&mut self, prefix: &str) -> EventLabel {
        let counter = self.counters.entry(prefix.to_string()).or_insert(0);
        loop {
            *counter += 1;
            let label = EventLabel(format!("{prefix}{counter}"));
            if self.used.insert(label.clone()) {
                return label;
            }
        }
    }

    /// Marks a label as taken without moving any counter.
    pub fn reserve(&mut self, label: &EventLabel) {
        self.used.insert(label.clone());
    }

    pub fn is_used(&self, label: &EventLabel) -> bool {
        self.used.contains(label)
    }

    pub fn release(&mut self, label: &EventLabel) {
        self.used.remove(label);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `EV`: the anaphoric argument of a discourse adverbial.
    AdverbialAntecedent,
    /// `VE`: bound to the complement of its companion `EV`.
    DerivedComplement,
    /// `DPRO`: demonstrative pronoun over eventualities.
    DeicticPronoun,
    /// `X` under a lambda.
    AbstractionBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarStatus {
    Unresolved,
    Resolved(EventLabel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnaphoricVar {
    pub name: String,
    pub kind: VarKind,
    pub status: VarStatus,
    /// For `VE`: the `EV` whose complement it denotes.
    pub companion: Option<String>,
}

impl AnaphoricVar {
    pub fn new(name: impl Into<String>, kind: VarKind) -> Self {
        AnaphoricVar { name: name.into(), kind, status: VarStatus::Unresolved, companion: None }
    }

    pub fn is_resolved(&self) -> bool {
        matches!(self.status, VarStatus::Resolved(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Event(EventLabel),
    Ind(String),
    Var(String),
    Lambda(Box<Lambda>),
    Term(Box<Term>),
}

impl Arg {
    pub fn event(s: &str) -> Arg {
        Arg::Event(EventLabel::new(s))
    }

    pub fn as_event(&self) -> Option<&EventLabel> {
        match self {
            Arg::Event(l) => Some(l),
            _ => None,
        }
    }
}

impl From<EventLabel> for Arg {
    fn from(l: EventLabel) -> Self {
        Arg::Event(l)
    }
}

/// `[label:]pred(arg, ...)`. Labels are events, or variables inside rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub label: Option<Arg>,
    pub pred: String,
    pub args: Vec<Arg>,
}

impl Term {
    pub fn new(pred: impl Into<String>, args: Vec<Arg>) -> Self {
        Term { label: None, pred: pred.into(), args }
    }

    pub fn labelled(label: EventLabel, pred: impl Into<String>, args: Vec<Arg>) -> Self {
        Term { label: Some(Arg::Event(label)), pred: pred.into(), args }
    }

    pub fn event_label(&self) -> Option<&EventLabel> {
        self.label.as_ref().and_then(Arg::as_event)
    }

    /// Same predicate and arguments, ignoring the label.
    pub fn same_content(&self, other: &Term) -> bool {
        self.pred == other.pred && self.args == other.args
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    pub bound: String,
    pub body: Term,
}

impl Lambda {
    pub fn new(bound: impl Into<String>, body: Term) -> Self {
        Lambda { bound: bound.into(), body }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(Term),
    Not { label: Option<Arg>, inner: Box<Formula> },
    Eq(Arg, Arg),
    And(Vec<Formula>),
}

impl Formula {
    pub fn negation(inner: Formula) -> Formula {
        Formula::Not { label: None, inner: Box::new(inner) }
    }

    pub fn label(&self) -> Option<&Arg> {
        match self {
            Formula::Atom(t) => t.label.as_ref(),
            Formula::Not { label, .. } => label.as_ref(),
            _ => None,
        }
    }

    pub fn event_label(&self) -> Option<&EventLabel> {
        self.label().and_then(Arg::as_event)
    }

    pub fn as_atom(&self) -> Option<&Term> {
        match self {
            Formula::Atom(t) => Some(t),
            _ => None,
        }
    }
}

/// Presupposed generic implication `antecedent > consequent`. Emitted only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeasibleRule {
    pub antecedent: Formula,
    pub consequent: Formula,
}

impl DefeasibleRule {
    pub fn negated_consequent(&self) -> bool {
        matches!(self.consequent, Formula::Not { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Formula(Formula),
    Rule(DefeasibleRule),
}

impl Item {
    pub fn event_label(&self) -> Option<&EventLabel> {
        match self {
            Item::Formula(f) => f.event_label(),
            Item::Rule(_) => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Item::Formula(Formula::Atom(t)) => Some(t),
            _ => None,
        }
    }
}

impl From<Term> for Item {
    fn from(t: Term) -> Self {
        Item::Formula(Formula::Atom(t))
    }
}

/// Outcome of asserting the denial of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Denial {
    /// A defeasible conclusion was withdrawn.
    Retracted(EventLabel),
    /// The denied relation was asserted non-defeasibly.
    Contradiction(EventLabel),
    /// Nothing matched.
    NoMatch,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogicalForm {
    pub items: Vec<Item>,
    pub vars: BTreeMap<String, AnaphoricVar>,
    pub labels: LabelGen,
    /// Labels of conclusions reached by defeasible inference.
    pub defeasible: BTreeSet<EventLabel>,
}

impl LogicalForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh_label(&mut self, prefix: &str) -> EventLabel {
        self.labels.fresh_label(prefix)
    }

    pub fn push(&mut self, item: impl Into<Item>) {
        let item = item.into();
        if let Some(l) = item.event_label() {
            self.labels.reserve(l);
        }
        self.items.push(item);
    }

    pub fn declare_var(&mut self, var: AnaphoricVar) {
        self.vars.insert(var.name.clone(), var);
    }

    /// Independent unresolved variables. `VE`-style dependents are bound as
    /// a side effect of resolving their companion and are not counted.
    pub fn unresolved(&self) -> Vec<&AnaphoricVar> {
        self.vars
            .values()
            .filter(|v| !v.is_resolved())
            .filter(|v| !matches!(v.kind, VarKind::DerivedComplement | VarKind::AbstractionBound))
            .collect()
    }

    pub fn term_by_label(&self, label: &EventLabel) -> Option<&Term> {
        self.items.iter().filter_map(Item::as_term).find(|t| t.event_label() == Some(label))
    }

    pub fn item_by_label(&self, label: &EventLabel) -> Option<&Item> {
        self.items.iter().find(|i| i.event_label() == Some(label))
    }

    pub fn item_by_label_mut(&mut self, label: &EventLabel) -> Option<&mut Item> {
        self.items.iter_mut().find(|i| i.event_label() == Some(label))
    }

    pub fn remove_label(&mut self, label: &EventLabel) -> Option<Item> {
        let idx = self.items.iter().position(|i| i.event_label() == Some(label))?;
        self.defeasible.remove(label);
        Some(self.items.remove(idx))
    }

    /// Labels that some item introduces: item labels plus the alternative
    /// introduced by `complement(antecedent, alternative)`.
    pub fn defined_labels(&self) -> BTreeMap<EventLabel, usize> {
        let mut defined: BTreeMap<EventLabel, usize> = BTreeMap::new();
        for item in &self.items {
            if let Some(l) = item.event_label() {
                *defined.entry(l.clone()).or_default() += 1;
            }
            if let Some(t) = item.as_term() {
                if t.pred == "complement" && t.label.is_none() {
                    if let Some(Arg::Event(l)) = t.args.get(1) {
                        *defined.entry(l.clone()).or_default() += 1;
                    }
                }
            }
        }
        defined
    }

    /// Event labels referenced outside rules.
    pub fn referenced_labels(&self) -> BTreeSet<EventLabel> {
        let mut out = BTreeSet::new();
        for item in &self.items {
            if let Item::Formula(f) = item {
                collect_formula_labels(f, &mut out);
            }
        }
        out
    }

    /// Every referenced label is defined exactly once.
    pub fn integrity_violations(&self) -> Vec<String> {
        let defined = self.defined_labels();
        let mut problems = Vec::new();
        for (l, n) in &defined {
            if *n > 1 {
                problems.push(format!("{l} defined {n} times"));
            }
        }
        for l in self.referenced_labels() {
            if !defined.contains_key(&l) {
                problems.push(format!("{l} referenced but not defined"));
            }
        }
        problems
    }

    /// Rewrites every occurrence of variable `name` (outside lambdas that
    /// rebind it) to `replacement`.
    pub fn substitute_var(&mut self, name: &str, replacement: &Arg) {
        for item in &mut self.items {
            match item {
                Item::Formula(f) => subst_formula(f, name, replacement),
                Item::Rule(r) => {
                    subst_formula(&mut r.antecedent, name, replacement);
                    subst_formula(&mut r.consequent, name, replacement);
                }
            }
        }
    }

    /// Binds an independent anaphoric variable. Dependent complement
    /// variables get fresh `e` labels, and their `complement` constraint is
    /// normalised to `complement(target, alternative)`.
    pub fn resolve_var(&self, name: &str, target: &EventLabel) -> Result<LogicalForm, LfError> {
        self.resolve_var_with(name, target, &BTreeMap::new())
    }

    /// As [`resolve_var`](Self::resolve_var), with caller-chosen labels for
    /// dependent variables.
    pub fn resolve_var_with(
        &self,
        name: &str,
        target: &EventLabel,
        dependents: &BTreeMap<String, EventLabel>,
    ) -> Result<LogicalForm, LfError> {
        let var = self.vars.get(name).ok_or_else(|| LfError::UnknownVariable(name.into()))?;
        if var.is_resolved() || matches!(var.kind, VarKind::DerivedComplement | VarKind::AbstractionBound) {
            return Err(LfError::UnknownVariable(name.into()));
        }
        if !self.labels.is_used(target) {
            return Err(LfError::UnknownTarget(target.to_string()));
        }
        let mut out = self.clone();
        out.substitute_var(name, &Arg::Event(target.clone()));
        out.vars.get_mut(name).expect("checked above").status = VarStatus::Resolved(target.clone());

        let deps: Vec<String> = out
            .vars
            .values()
            .filter(|v| v.companion.as_deref() == Some(name) && !v.is_resolved())
            .map(|v| v.name.clone())
            .collect();
        for dep in deps {
            let alt = match dependents.get(&dep) {
                Some(l) => {
                    out.labels.reserve(l);
                    l.clone()
                }
                None => out.labels.fresh_label("e"),
            };
            out.substitute_var(&dep, &Arg::Event(alt.clone()));
            out.vars.get_mut(&dep).expect("listed above").status = VarStatus::Resolved(alt.clone());
            for item in &mut out.items {
                if let Item::Formula(Formula::Atom(t)) = item {
                    if t.pred == "complement"
                        && t.label.is_none()
                        && t.args == [Arg::Event(alt.clone()), Arg::Event(target.clone())]
                    {
                        t.args.swap(0, 1);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Asserts `~R(args)`. A matching defeasible conclusion is withdrawn.
    pub fn deny(&mut self, denied: &Term) -> Denial {
        let hit = self
            .items
            .iter()
            .filter_map(Item::as_term)
            .find(|t| t.same_content(denied))
            .and_then(|t| t.event_label().cloned());
        match hit {
            Some(l) if self.defeasible.contains(&l) => {
                self.remove_label(&l);
                self.items.retain(|i| {
                    !matches!(i.as_term(), Some(t) if t.pred == "defeasible" && t.args == [Arg::Event(l.clone())])
                });
                Denial::Retracted(l)
            }
            Some(l) => Denial::Contradiction(l),
            None => Denial::NoMatch,
        }
    }

    /// Renames event labels everywhere they occur, rules and lambda bodies
    /// included.
    pub fn rename_labels(&mut self, map: &BTreeMap<EventLabel, EventLabel>) {
        if map.is_empty() {
            return;
        }
        for item in &mut self.items {
            rename_in_item(item, map);
        }
        for (from, to) in map {
            self.labels.release(from);
            if self.defeasible.remove(from) {
                self.defeasible.insert(to.clone());
            }
        }
        for to in map.values() {
            self.labels.reserve(to);
        }
        for v in self.vars.values_mut() {
            if let VarStatus::Resolved(l) = &v.status {
                if let Some(to) = map.get(l) {
                    v.status = VarStatus::Resolved(to.clone());
                }
            }
        }
    }

    /// Canonical text form, see the crate README for the grammar.
    pub fn pretty_print(&self) -> String {
        print::render_lf(self)
    }
}

impl fmt::Display for LogicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty_print())
    }
}

fn collect_formula_labels(f: &Formula, out: &mut BTreeSet<EventLabel>) {
    match f {
        Formula::Atom(t) => collect_term_labels(t, out),
        Formula::Not { label, inner } => {
            if let Some(Arg::Event(l)) = label {
                out.insert(l.clone());
            }
            collect_formula_labels(inner, out);
        }
        Formula::Eq(a, b) => {
            collect_arg_labels(a, out);
            collect_arg_labels(b, out);
        }
        Formula::And(fs) => fs.iter().for_each(|f| collect_formula_labels(f, out)),
    }
}

fn collect_term_labels(t: &Term, out: &mut BTreeSet<EventLabel>) {
    if let Some(a) = &t.label {
        collect_arg_labels(a, out);
    }
    t.args.iter().for_each(|a| collect_arg_labels(a, out));
}

fn collect_arg_labels(a: &Arg, out: &mut BTreeSet<EventLabel>) {
    match a {
        Arg::Event(l) => {
            out.insert(l.clone());
        }
        Arg::Lambda(l) => collect_term_labels(&l.body, out),
        Arg::Term(t) => collect_term_labels(t, out),
        Arg::Ind(_) | Arg::Var(_) => {}
    }
}

pub fn rename_in_item(item: &mut Item, map: &BTreeMap<EventLabel, EventLabel>) {
    match item {
        Item::Formula(f) => rename_formula(f, map),
        Item::Rule(r) => {
            rename_formula(&mut r.antecedent, map);
            rename_formula(&mut r.consequent, map);
        }
    }
}

fn rename_formula(f: &mut Formula, map: &BTreeMap<EventLabel, EventLabel>) {
    match f {
        Formula::Atom(t) => rename_term(t, map),
        Formula::Not { label, inner } => {
            if let Some(l) = label {
                rename_arg(l, map);
            }
            rename_formula(inner, map);
        }
        Formula::Eq(a, b) => {
            rename_arg(a, map);
            rename_arg(b, map);
        }
        Formula::And(fs) => fs.iter_mut().for_each(|f| rename_formula(f, map)),
    }
}

pub fn rename_term(t: &mut Term, map: &BTreeMap<EventLabel, EventLabel>) {
    if let Some(l) = &mut t.label {
        rename_arg(l, map);
    }
    t.args.iter_mut().for_each(|a| rename_arg(a, map));
}

fn rename_arg(a: &mut Arg, map: &BTreeMap<EventLabel, EventLabel>) {
    match a {
        Arg::Event(l) => {
            if let Some(to) = map.get(l) {
                *l = to.clone();
            }
        }
        Arg::Lambda(l) => rename_term(&mut l.body, map),
        Arg::Term(t) => rename_term(t, map),
        Arg::Ind(_) | Arg::Var(_) => {}
    }
}

fn subst_formula(f: &mut Formula, name: &str, rep: &Arg) {
    match f {
        Formula::Atom(t) => subst_term(t, name, rep),
        Formula::Not { label, inner } => {
            if let Some(l) = label {
                subst_arg(l, name, rep);
            }
            subst_formula(inner, name, rep);
        }
        Formula::Eq(a, b) => {
            subst_arg(a, name, rep);
            subst_arg(b, name, rep);
        }
        Formula::And(fs) => fs.iter_mut().for_each(|f| subst_formula(f, name, rep)),
    }
}

fn subst_term(t: &mut Term, name: &str, rep: &Arg) {
    if let Some(l) = &mut t.label {
        subst_arg(l, name, rep);
    }
    t.args.iter_mut().for_each(|a| subst_arg(a, name, rep));
}

fn subst_arg(a: &mut Arg, name: &str, rep: &Arg) {
    match a {
        Arg::Var(v) if v == name => *a = rep.clone(),
        Arg::Lambda(l) if l.bound != name => subst_term(&mut l.body, name, rep),
        Arg::Term(t) => subst_term(t, name, rep),
        _ => {}
    }
}

/// `[λx . body] arg`: every free occurrence of the bound variable becomes
/// `arg`. Vacuous binders return the body unchanged.
pub fn beta_reduce(abs: &Lambda, arg: &EventLabel) -> Term {
    let mut body = abs.body.clone();
    subst_term(&mut body, &abs.bound, &Arg::Event(arg.clone()));
    body
}

/// Replaces argument `over` of a binary relation with a fresh bound `X`.
pub fn abstract_relation(rel: &Term, over: ArgSlot) -> Result<Lambda, LfError> {
    if rel.args.len() != 2 {
        return Err(LfError::NonBinary(print::render_term(rel)));
    }
    let bound = fresh_bound_name(rel);
    let mut body = Term::new(rel.pred.clone(), rel.args.clone());
    body.args[over.index()] = Arg::Var(bound.clone());
    Ok(Lambda::new(bound, body))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgSlot {
    First,
    Second,
}

impl ArgSlot {
    pub fn index(self) -> usize {
        match self {
            ArgSlot::First => 0,
            ArgSlot::Second => 1,
        }
    }
}

fn fresh_bound_name(t: &Term) -> String {
    let mut taken = BTreeSet::new();
    fn walk(a: &Arg, taken: &mut BTreeSet<String>) {
        match a {
            Arg::Var(v) => {
                taken.insert(v.clone());
            }
            Arg::Lambda(l) => {
                taken.insert(l.bound.clone());
                l.body.args.iter().for_each(|a| walk(a, taken));
            }
            Arg::Term(t) => t.args.iter().for_each(|a| walk(a, taken)),
            _ => {}
        }
    }
    t.args.iter().for_each(|a| walk(a, &mut taken));
    std::iter::once("X".to_string())
        .chain((1..).map(|n| format!("X{n}")))
        .find(|n| !taken.contains(n))
        .expect("infinite supply")
}

pub use print::{render_item, render_term};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_label_increments_counter() {
        let mut g = LabelGen::new();
        g.set_counter("e", 5);
        assert_eq!(g.fresh_label("e").as_str(), "e6");
        assert_eq!(g.fresh_label("i").as_str(), "i1");
        let a = g.fresh_label("e");
        let b = g.fresh_label("e");
        assert_ne!(a, b);
    }

    #[test]
    fn fresh_label_skips_reserved() {
        let mut g = LabelGen::new();
        g.reserve(&EventLabel::new("e1"));
        g.reserve(&EventLabel::new("e3"));
        assert_eq!(g.fresh_label("e").as_str(), "e2");
        assert_eq!(g.fresh_label("e").as_str(), "e4");
    }

    #[test]
    fn beta_reduce_after() {
        let abs = Lambda::new("x", Term::new("after", vec![Arg::Var("x".into()), Arg::Var("EV".into())]));
        let t = beta_reduce(&abs, &EventLabel::new("e4"));
        assert_eq!(render_term(&t), "after(e4,EV)");
    }

    #[test]
    fn beta_reduce_if_and_vacuous() {
        let abs = Lambda::new("x", Term::new("if", vec![Arg::Var("VE".into()), Arg::Var("x".into())]));
        assert_eq!(render_term(&beta_reduce(&abs, &EventLabel::new("e3"))), "if(VE,e3)");
        let p = Term::new("p", vec![Arg::Ind("a".into())]);
        let vac = Lambda::new("x", p.clone());
        assert_eq!(beta_reduce(&vac, &EventLabel::new("e1")), p);
    }

    fn lf_with_after() -> LogicalForm {
        let mut lf = parse_lf("e2:order(j,c1) ^ e4:find(j,e5) ^ i4:after(e4,EV)").unwrap();
        lf.declare_var(AnaphoricVar::new("EV", VarKind::AdverbialAntecedent));
        lf
    }

    #[test]
    fn resolve_after() {
        let lf = lf_with_after();
        let out = lf.resolve_var("EV", &EventLabel::new("e2")).unwrap();
        assert!(out.pretty_print().contains("i4:after(e4,e2)"));
        assert_eq!(out.unresolved().len(), 0);
        assert!(matches!(out.resolve_var("EV", &EventLabel::new("e2")), Err(LfError::UnknownVariable(_))));
    }

    #[test]
    fn resolve_unknown_target() {
        let lf = lf_with_after();
        assert!(matches!(lf.resolve_var("EV", &EventLabel::new("e9")), Err(LfError::UnknownTarget(_))));
    }

    #[test]
    fn resolve_complement_forming() {
        let mut lf = parse_lf("e1:red(light) ^ e2:stop(you) ^ e3:get_ticket(you) ^ i1:if(VE,e3) ^ complement(VE,EV)").unwrap();
        lf.declare_var(AnaphoricVar::new("EV", VarKind::AdverbialAntecedent));
        let mut ve = AnaphoricVar::new("VE", VarKind::DerivedComplement);
        ve.companion = Some("EV".into());
        lf.declare_var(ve);
        assert_eq!(lf.unresolved().len(), 1);
        let out = lf.resolve_var("EV", &EventLabel::new("e2")).unwrap();
        let text = out.pretty_print();
        assert!(text.contains("i1:if(e4,e3)"), "{text}");
        assert!(text.contains("complement(e2,e4)"), "{text}");
        assert!(out.integrity_violations().is_empty(), "{:?}", out.integrity_violations());
    }

    #[test]
    fn abstract_relation_slots() {
        let r = Term::new("result", vec![Arg::event("e2"), Arg::event("e1")]);
        let l = abstract_relation(&r, ArgSlot::First).unwrap();
        assert_eq!(print::render_arg(&Arg::Lambda(Box::new(l))), "\\X.result(X,e1)");
        let e = Term::new("explanation", vec![Arg::event("e1"), Arg::event("e2")]);
        let l = abstract_relation(&e, ArgSlot::Second).unwrap();
        assert_eq!(print::render_arg(&Arg::Lambda(Box::new(l))), "\\X.explanation(e1,X)");
        let u = Term::new("left", vec![Arg::Ind("j".into())]);
        assert!(matches!(abstract_relation(&u, ArgSlot::First), Err(LfError::NonBinary(_))));
    }

    #[test]
    fn deny_defeasible_and_strict() {
        let mut lf = parse_lf("i1:elaboration(e2,e1) ^ i2:explanation(e2,e1) ^ defeasible(i2)").unwrap();
        lf.defeasible.insert(EventLabel::new("i2"));
        let denied = Term::new("explanation", vec![Arg::event("e2"), Arg::event("e1")]);
        assert_eq!(lf.deny(&denied), Denial::Retracted(EventLabel::new("i2")));
        assert_eq!(lf.pretty_print(), "i1:elaboration(e2,e1)");
        let denied = Term::new("elaboration", vec![Arg::event("e2"), Arg::event("e1")]);
        assert_eq!(lf.deny(&denied), Denial::Contradiction(EventLabel::new("i1")));
    }
}
