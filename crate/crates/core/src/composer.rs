//! Compositional interpretation of derivation trees.
//!
//! Clauses contribute their own LF. Structural connectives contribute a
//! labelled binary relation over the interpretations of their arguments.
//! Adverbials contribute `R(σ, EV)` with `EV` left for the resolver, and
//! the `for example` tree set abstracts over the relation it scopes under.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::derivation::{DerivationNode, DerivationTree, NodeTree};
use crate::grammar::TreeKind;
use crate::input::{AdjacencyRule, ClauseTop};
use crate::lexicon::{ConnectiveClass, ConnectiveEntry, InteractionCase, Props, TreeFamily};
use crate::lf::{
    abstract_relation, beta_reduce, rename_in_item, rename_term, AnaphoricVar, Arg, ArgSlot, EventLabel, Formula,
    Item, Lambda, LfError, LogicalForm, Term, VarKind,
};
use crate::resolver::infer_adjacency_relation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("`{0}` is an auxiliary tree and cannot be the root of a derivation")]
    AuxiliaryRoot(String),
    #[error("`{0}` needs two arguments")]
    Arity(String),
    #[error("`{0}` is adjoined to a unit without an eventuality label")]
    NoEventuality(String),
    #[error("`for example` cannot find {0} in the relation it scopes under")]
    ForExampleScope(String),
    #[error(transparent)]
    Lf(#[from] LfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationOrigin {
    /// Anchored by an initial tree or an auxiliary relation tree.
    Structural,
    /// A conjunct sharing the relation of its enclosing segment.
    Parallel,
    /// Concluded defeasibly from the adjacency rules.
    Inferred,
    /// Contributed by a discourse adverbial.
    Adverbial,
}

impl fmt::Display for RelationOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationOrigin::Structural => "structural",
            RelationOrigin::Parallel => "parallel",
            RelationOrigin::Inferred => "inferred",
            RelationOrigin::Adverbial => "adverbial",
        })
    }
}

/// A relation as first emitted, before any later abstraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRecord {
    pub term: Term,
    pub origin: RelationOrigin,
    pub node: usize,
    pub surface: String,
    pub position: usize,
    pub negated: bool,
}

impl RelationRecord {
    pub fn label(&self) -> &EventLabel {
        self.term.event_label().expect("relations are labelled")
    }

    pub fn links(&self, a: &EventLabel, b: &EventLabel) -> bool {
        let has = |l: &EventLabel| self.term.args.iter().any(|x| x.as_event() == Some(l));
        has(a) && has(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdverbialUse {
    pub node: usize,
    pub entry: ConnectiveEntry,
    pub position: usize,
    pub sigma: EventLabel,
    pub clause: Option<String>,
    pub label: EventLabel,
    pub var: String,
    pub complement_var: Option<String>,
    pub case: InteractionCase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeicticUse {
    pub var: String,
    pub clause: String,
    pub position: usize,
    pub negated: bool,
}

/// A `for example` abstraction left open until the adverbial it scopes
/// over is resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PendingAbstraction {
    pub over: EventLabel,
    pub sigma: EventLabel,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseInfo {
    pub id: String,
    pub position: usize,
    pub label: Option<EventLabel>,
    pub props: Props,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub node: usize,
    pub name: String,
    pub items: Vec<Item>,
    pub note: Option<String>,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.items.iter().map(crate::lf::render_item).collect();
        write!(f, "{} {}:", self.node, self.name)?;
        if !items.is_empty() {
            write!(f, " {}", items.join(" ^ "))?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    pub lf: LogicalForm,
    pub top: Arg,
    pub relations: Vec<RelationRecord>,
    pub adverbials: Vec<AdverbialUse>,
    pub deictics: Vec<DeicticUse>,
    pub pending: Vec<PendingAbstraction>,
    /// Clauses in textual order.
    pub clauses: Vec<ClauseInfo>,
    pub trace: Vec<TraceLine>,
}

impl Interpretation {
    pub fn render_trace(&self) -> String {
        self.trace.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn clause_by_label(&self, l: &EventLabel) -> Option<&ClauseInfo> {
        self.clauses.iter().find(|c| c.label.as_ref() == Some(l))
    }
}

/// The relation a daughter sits under, for conjuncts that share it.
#[derive(Debug, Clone)]
struct Enclosing {
    relation: String,
    other: Arg,
    slot: ArgSlot,
    surface: String,
    position: usize,
}

struct Composed {
    top: Arg,
    props: Props,
    negated_deictic: bool,
}

/// `for_ex1` was seen: its scope and, possibly, an earlier adverbial on
/// the same clause.
struct SetScope {
    sigma: EventLabel,
    /// Position of that adverbial.
    over: Option<usize>,
}

struct Composer<'a> {
    rules: &'a [AdjacencyRule],
    lf: LogicalForm,
    relations: Vec<RelationRecord>,
    adverbials: Vec<AdverbialUse>,
    deictics: Vec<DeicticUse>,
    pending: Vec<PendingAbstraction>,
    clauses: Vec<ClauseInfo>,
    trace: Vec<TraceLine>,
    sets: BTreeMap<usize, SetScope>,
    vars: BTreeMap<&'static str, usize>,
    placeholders: u64,
}

fn arity_error(n: &DerivationNode) -> ComposeError {
    ComposeError::Arity(n.name())
}

impl<'a> Composer<'a> {
    fn fresh_var(&mut self, stem: &'static str) -> String {
        let n = self.vars.entry(stem).or_insert(0);
        *n += 1;
        if *n == 1 {
            stem.to_string()
        } else {
            format!("{stem}{n}")
        }
    }

    fn placeholder(&mut self) -> EventLabel {
        self.placeholders += 1;
        EventLabel::new(format!("#{}", self.placeholders))
    }

    fn emit(&mut self, item: Item, at: usize) {
        self.lf.push(item.clone());
        if let Some(line) = self.trace.iter_mut().rev().find(|l| l.node == at) {
            line.items.push(item);
        }
    }

    fn open_trace(&mut self, n: &DerivationNode) {
        self.trace.push(TraceLine { node: n.id, name: n.name(), items: Vec::new(), note: None });
    }

    fn note(&mut self, at: usize, text: String) {
        if let Some(line) = self.trace.iter_mut().rev().find(|l| l.node == at) {
            line.note = Some(match line.note.take() {
                Some(old) => format!("{old}; {text}"),
                None => text,
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn relation(
        &mut self,
        n: &DerivationNode,
        entry: &ConnectiveEntry,
        pred: &str,
        args: [Arg; 2],
        origin: RelationOrigin,
        negated: bool,
    ) -> EventLabel {
        let label = self.lf.fresh_label("i");
        let term = Term::labelled(label.clone(), pred, args.to_vec());
        let item = if negated {
            Item::Formula(Formula::Not {
                label: Some(Arg::Event(label.clone())),
                inner: Box::new(Formula::Atom(Term::new(pred, args.to_vec()))),
            })
        } else {
            Item::from(term.clone())
        };
        self.emit(item, n.id);
        self.relations.push(RelationRecord {
            term,
            origin,
            node: n.id,
            surface: entry.surface.clone(),
            position: n.positions[0],
            negated,
        });
        label
    }

    fn node(&mut self, n: &DerivationNode, enc: Option<&Enclosing>) -> Result<Composed, ComposeError> {
        self.open_trace(n);
        let (mut top, mut props, negated_deictic, own) = match &n.tree {
            NodeTree::Clause(c) => {
                for item in &c.items {
                    self.emit(item.clone(), n.id);
                }
                let top = match &c.top {
                    ClauseTop::Label(l) => Arg::Event(l.clone()),
                    ClauseTop::Deictic => {
                        let v = self.fresh_var("DPRO");
                        self.lf.declare_var(AnaphoricVar::new(v.clone(), VarKind::DeicticPronoun));
                        self.deictics.push(DeicticUse {
                            var: v.clone(),
                            clause: c.id.clone(),
                            position: n.positions[0],
                            negated: c.has("negated"),
                        });
                        Arg::Var(v)
                    }
                };
                self.clauses.push(ClauseInfo {
                    id: c.id.clone(),
                    position: n.positions[0],
                    label: top.as_event().cloned(),
                    props: c.props.clone(),
                });
                let neg = c.top == ClauseTop::Deictic && c.has("negated");
                (top, c.props.clone(), neg, None)
            }
            NodeTree::Elementary { entry, tree, .. } => {
                if tree.kind == TreeKind::Auxiliary {
                    return Err(ComposeError::AuxiliaryRoot(n.name()));
                }
                let subs: Vec<_> = n.substitutions().collect();
                if subs.len() != 2 {
                    return Err(arity_error(n));
                }
                let left = self.node(&subs[0].child, None)?;
                let right_first = match entry.tree_family {
                    TreeFamily::Subconj => {
                        let pre = n.elementary_name().is_some_and(|s| s.ends_with("-pre"));
                        entry.sub_first != pre
                    }
                    TreeFamily::CoordInitial => true,
                    _ => false,
                };
                let e = Enclosing {
                    relation: entry.relation.clone(),
                    other: left.top.clone(),
                    slot: if right_first { ArgSlot::First } else { ArgSlot::Second },
                    surface: entry.surface.clone(),
                    position: n.positions[0],
                };
                let right = self.node(&subs[1].child, Some(&e))?;
                let args = if right_first { [right.top, left.top] } else { [left.top, right.top] };
                let negated = left.negated_deictic || right.negated_deictic;
                let label = self.relation(n, entry, &entry.relation, args, RelationOrigin::Structural, negated);
                (Arg::Event(label.clone()), Props::new(), false, Some(label))
            }
        };
        let clause_id = n.clause().map(|c| c.id.clone());
        for edge in n.adjunctions() {
            let child = &edge.child;
            let Some(entry) = child.entry() else { continue };
            match (entry.tree_family, child.elementary_name()) {
                (TreeFamily::ForExampleSet, Some("for_ex1")) => {
                    self.open_trace(child);
                    let sigma = top.as_event().cloned().ok_or_else(|| ComposeError::NoEventuality(entry.surface.clone()))?;
                    let over = n
                        .adjunctions()
                        .filter(|e| e.child.entry().is_some_and(|x| x.tree_family == TreeFamily::AdverbialAux))
                        .map(|e| e.child.positions[0])
                        .filter(|p| *p < child.positions[0])
                        .max();
                    self.note(child.id, format!("scope {sigma}"));
                    self.sets.insert(child.set_id().expect("tree-set member"), SetScope { sigma, over });
                }
                (TreeFamily::ForExampleSet, _) => {
                    let over = own.clone().ok_or_else(|| ComposeError::ForExampleScope("a relation".into()))?;
                    self.abstraction(child, entry, &over)?;
                }
                (TreeFamily::AdverbialAux, _) => {
                    let sigma = top.as_event().cloned().ok_or_else(|| ComposeError::NoEventuality(entry.surface.clone()))?;
                    if let Some(p) = self.adverbial(child, entry, &sigma, clause_id.clone()) {
                        top = Arg::Event(p);
                        props.clear();
                    }
                }
                (TreeFamily::ConjAux, _) if enc.is_some() => {
                    self.parallel(child, entry, enc.expect("checked"))?;
                }
                _ => {
                    top = self.aux_relation(child, entry, top, &props)?;
                    props.clear();
                }
            }
        }
        Ok(Composed { top, props, negated_deictic })
    }

    /// An auxiliary relation tree adjoined at a segment's root: the segment
    /// so far is the left argument.
    fn aux_relation(
        &mut self,
        beta: &DerivationNode,
        entry: &ConnectiveEntry,
        host: Arg,
        host_props: &Props,
    ) -> Result<Arg, ComposeError> {
        self.open_trace(beta);
        let sub = beta.substitutions().next().ok_or_else(|| arity_error(beta))?;
        let e = Enclosing {
            relation: entry.relation.clone(),
            other: host.clone(),
            slot: ArgSlot::First,
            surface: entry.surface.clone(),
            position: beta.positions[0],
        };
        let right = self.node(&sub.child, Some(&e))?;
        let base = self.relation(
            beta,
            entry,
            &entry.relation,
            [right.top.clone(), host.clone()],
            RelationOrigin::Structural,
            right.negated_deictic,
        );
        let mut own = base.clone();
        if matches!(entry.class, ConnectiveClass::Punct | ConnectiveClass::Coord) {
            let inferred = infer_adjacency_relation(&host, host_props, &right.top, &right.props, self.rules);
            if let Some(t) = inferred.refined {
                let label = self.relation(beta, entry, &t.pred, [right.top.clone(), host.clone()], RelationOrigin::Inferred, false);
                self.lf.defeasible.insert(label.clone());
                self.emit(Item::from(Term::new("defeasible", vec![Arg::Event(label.clone())])), beta.id);
                own = label;
            }
        }
        if let Some(r) = &entry.refine {
            self.note(beta.id, format!("{r} suggested"));
        }
        for edge in beta.adjunctions() {
            let child = &edge.child;
            match child.entry() {
                Some(e) if e.tree_family == TreeFamily::ForExampleSet => self.abstraction(child, e, &own)?,
                _ => return Err(ComposeError::AuxiliaryRoot(child.name())),
            }
        }
        Ok(Arg::Event(base))
    }

    /// A conjunct inside the right daughter of a relation gets that same
    /// relation, to the daughter's sister.
    fn parallel(&mut self, beta: &DerivationNode, entry: &ConnectiveEntry, enc: &Enclosing) -> Result<(), ComposeError> {
        self.open_trace(beta);
        let sub = beta.substitutions().next().ok_or_else(|| arity_error(beta))?;
        let right = self.node(&sub.child, Some(enc))?;
        let args = match enc.slot {
            ArgSlot::First => [right.top, enc.other.clone()],
            ArgSlot::Second => [enc.other.clone(), right.top],
        };
        let mut shared = entry.clone();
        shared.surface = enc.surface.clone();
        self.relation(beta, &shared, &enc.relation, args, RelationOrigin::Parallel, false);
        if let Some(r) = self.relations.last_mut() {
            r.position = enc.position;
        }
        self.note(beta.id, format!("parallel to {} at {}", enc.relation, enc.position));
        if beta.adjunctions().next().is_some() {
            return Err(ComposeError::AuxiliaryRoot(beta.name()));
        }
        Ok(())
    }

    /// Returns the new top of the host when the adverbial takes it over.
    fn adverbial(
        &mut self,
        beta: &DerivationNode,
        entry: &ConnectiveEntry,
        sigma: &EventLabel,
        clause: Option<String>,
    ) -> Option<EventLabel> {
        self.open_trace(beta);
        let case = entry.interaction_case.unwrap_or(InteractionCase::Case1);
        let label = self.placeholder();
        let ev = self.fresh_var("EV");
        self.lf.declare_var(AnaphoricVar::new(ev.clone(), VarKind::AdverbialAntecedent));
        let (term, complement_var) = if entry.complement_forming {
            let ve = self.fresh_var("VE");
            let mut v = AnaphoricVar::new(ve.clone(), VarKind::DerivedComplement);
            v.companion = Some(ev.clone());
            self.lf.declare_var(v);
            let abs = Lambda::new("x", Term::new(entry.relation.clone(), vec![Arg::Var(ve.clone()), Arg::Var("x".into())]));
            (beta_reduce(&abs, sigma), Some(ve))
        } else {
            let abs = Lambda::new("x", Term::new(entry.relation.clone(), vec![Arg::Var("x".into()), Arg::Var(ev.clone())]));
            (beta_reduce(&abs, sigma), None)
        };
        let term = Term { label: Some(Arg::Event(label.clone())), ..term };
        self.emit(Item::from(term.clone()), beta.id);
        if let Some(ve) = &complement_var {
            self.emit(Item::from(Term::new("complement", vec![Arg::Var(ve.clone()), Arg::Var(ev.clone())])), beta.id);
        }
        self.relations.push(RelationRecord {
            term,
            origin: RelationOrigin::Adverbial,
            node: beta.id,
            surface: entry.surface.clone(),
            position: beta.positions[0],
            negated: false,
        });
        self.note(beta.id, format!("{case}"));
        self.adverbials.push(AdverbialUse {
            node: beta.id,
            entry: entry.clone(),
            position: beta.positions[0],
            sigma: sigma.clone(),
            clause,
            label: label.clone(),
            var: ev,
            complement_var,
            case,
        });
        (case == InteractionCase::Case2).then_some(label)
    }

    /// `for_ex2`: the relation `over` becomes `exemplification(σ, λX.R(X, δ))`
    /// under the same label.
    fn abstraction(&mut self, ex2: &DerivationNode, entry: &ConnectiveEntry, over: &EventLabel) -> Result<(), ComposeError> {
        self.open_trace(ex2);
        let set = ex2.set_id().expect("tree-set member");
        let scope = self.sets.remove(&set).ok_or_else(|| ComposeError::ForExampleScope("its scope marker".into()))?;
        if let Some(pos) = scope.over {
            let adv = self.adverbials.iter().find(|a| a.position == pos).expect("adjoined before for_ex2").label.clone();
            self.note(ex2.id, format!("pending over {adv}"));
            self.pending.push(PendingAbstraction { over: adv, sigma: scope.sigma, relation: entry.relation.clone() });
            return Ok(());
        }
        let rel = self.lf.term_by_label(over).cloned().ok_or_else(|| ComposeError::ForExampleScope(over.to_string()))?;
        let term = exemplify(&rel, &scope.sigma, &entry.relation)?;
        self.lf.declare_var(AnaphoricVar::new(abstraction_var(&term), VarKind::AbstractionBound));
        *self.lf.item_by_label_mut(over).expect("looked up") = Item::from(term.clone());
        if let Some(line) = self.trace.iter_mut().rev().find(|l| l.node == ex2.id) {
            line.items.push(Item::from(term));
        }
        Ok(())
    }

    /// Adverbial labels in textual order, after the structural ones.
    fn finish(mut self, top: Arg) -> Interpretation {
        let mut order: Vec<(usize, EventLabel)> = self.adverbials.iter().map(|a| (a.position, a.label.clone())).collect();
        order.sort();
        let mut map = BTreeMap::new();
        for (_, p) in order {
            let l = self.lf.fresh_label("i");
            map.insert(p, l);
        }
        self.lf.rename_labels(&map);
        let ren = |l: &mut EventLabel| {
            if let Some(to) = map.get(l) {
                *l = to.clone();
            }
        };
        for r in &mut self.relations {
            rename_term(&mut r.term, &map);
        }
        for a in &mut self.adverbials {
            ren(&mut a.label);
        }
        for p in &mut self.pending {
            ren(&mut p.over);
        }
        for line in &mut self.trace {
            line.items.iter_mut().for_each(|i| rename_in_item(i, &map));
            if let Some(n) = &mut line.note {
                for (from, to) in &map {
                    *n = n.replace(from.as_str(), to.as_str());
                }
            }
        }
        let top = match top {
            Arg::Event(l) => Arg::Event(map.get(&l).cloned().unwrap_or(l)),
            other => other,
        };
        self.clauses.sort_by_key(|c| c.position);
        Interpretation {
            lf: self.lf,
            top,
            relations: self.relations,
            adverbials: self.adverbials,
            deictics: self.deictics,
            pending: self.pending,
            clauses: self.clauses,
            trace: self.trace,
        }
    }
}

fn abstraction_var(t: &Term) -> String {
    t.args.iter().find_map(|a| if let Arg::Lambda(l) = a { Some(l.bound.clone()) } else { None }).unwrap_or_else(|| "X".into())
}

/// `exemplification(σ, λX.R(X, δ))` from `R(σ, δ)` or `R(δ, σ)`.
pub fn exemplify(rel: &Term, sigma: &EventLabel, pred: &str) -> Result<Term, ComposeError> {
    let slot = match rel.args.iter().position(|a| a.as_event() == Some(sigma)) {
        Some(0) => ArgSlot::First,
        Some(1) => ArgSlot::Second,
        _ => return Err(ComposeError::ForExampleScope(sigma.to_string())),
    };
    let abs = abstract_relation(rel, slot)?;
    let mut out = Term::new(pred, vec![Arg::Event(sigma.clone()), Arg::Lambda(Box::new(abs))]);
    out.label = rel.label.clone();
    Ok(out)
}

/// Interprets a derivation. `rules` drives the defeasible refinement of
/// relations between adjacent units.
pub fn interpret(d: &DerivationTree, rules: &[AdjacencyRule]) -> Result<Interpretation, ComposeError> {
    let mut c = Composer {
        rules,
        lf: LogicalForm::new(),
        relations: Vec::new(),
        adverbials: Vec::new(),
        deictics: Vec::new(),
        pending: Vec::new(),
        clauses: Vec::new(),
        trace: Vec::new(),
        sets: BTreeMap::new(),
        vars: BTreeMap::new(),
        placeholders: 0,
    };
    for n in d.nodes() {
        if let Some(cl) = n.clause() {
            for item in &cl.items {
                if let Some(l) = item.event_label() {
                    c.lf.labels.reserve(l);
                }
            }
        }
    }
    let top = c.node(&d.root, None)?.top;
    Ok(c.finish(top))
}
