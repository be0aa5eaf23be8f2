//! Anaphoric resolution of discourse adverbials and deictic pronouns.
//!
//! The context grows clause by clause. An adverbial's `EV` is resolved
//! against the eventualities introduced before it, plus whatever can be
//! reached from them by bridging inference, filtered by the adverbial's
//! lexical constraint and ranked by an optional compatibility predicate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::composer::{exemplify, AdverbialUse, ClauseInfo, ComposeError, Interpretation, RelationOrigin};
use crate::input::AdjacencyRule;
use crate::lexicon::{InteractionCase, Lexicon, Props};
use crate::lf::{
    render_item, Arg, DefeasibleRule, Denial, EventLabel, Formula, Item, LfError, LogicalForm, Term,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("no antecedent for `{surface}` at {position} satisfies `{constraint}`")]
    NoCandidate { surface: String, position: usize, constraint: String },
    #[error("{0} is not a process and has no culmination")]
    NotAProcess(EventLabel),
    #[error("{0} is not a question and has no inferred answer")]
    NotAQuestion(EventLabel),
    #[error("{0} admits no complement")]
    NoComplement(EventLabel),
    #[error("unknown compatibility predicate `{0}`")]
    UnknownCompat(String),
    #[error("deictic pronoun in {0} has no preceding eventuality")]
    NoDeicticAntecedent(String),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Lf(#[from] LfError),
}

/// Inferences that yield a new referent from an existing one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BridgeKind {
    /// A process coerced to its culminated counterpart.
    Culmination,
    /// The answer to a yes/no question.
    InferredAnswer,
}

impl BridgeKind {
    pub fn predicate(self) -> &'static str {
        match self {
            BridgeKind::Culmination => "culmination",
            BridgeKind::InferredAnswer => "answer",
        }
    }

    fn source_prop(self) -> &'static str {
        match self {
            BridgeKind::Culmination => "process",
            BridgeKind::InferredAnswer => "interrogative",
        }
    }

    /// Properties of the bridged referent.
    pub fn props(self) -> Props {
        let p = match self {
            BridgeKind::Culmination => "culminated",
            BridgeKind::InferredAnswer => "condition",
        };
        [p.to_string()].into()
    }
}

impl fmt::Display for BridgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.predicate())
    }
}

fn bridge(lf: &mut LogicalForm, kind: BridgeKind, e: &EventLabel, props: &Props) -> Result<EventLabel, ResolveError> {
    if !props.contains(kind.source_prop()) {
        return Err(match kind {
            BridgeKind::Culmination => ResolveError::NotAProcess(e.clone()),
            BridgeKind::InferredAnswer => ResolveError::NotAQuestion(e.clone()),
        });
    }
    if let Some(l) = existing_bridge(lf, kind, e) {
        return Ok(l);
    }
    let l = lf.fresh_label("e");
    lf.push(Term::labelled(l.clone(), kind.predicate(), vec![Arg::Event(e.clone())]));
    Ok(l)
}

fn existing_bridge(lf: &LogicalForm, kind: BridgeKind, e: &EventLabel) -> Option<EventLabel> {
    lf.items
        .iter()
        .filter_map(Item::as_term)
        .find(|t| t.pred == kind.predicate() && t.args == [Arg::Event(e.clone())])
        .and_then(|t| t.event_label().cloned())
}

/// `eN:culmination(e)` for a process `e`. Asking twice returns the same
/// label and adds nothing.
pub fn culmination_bridge(lf: &mut LogicalForm, e: &EventLabel, props: &Props) -> Result<EventLabel, ResolveError> {
    bridge(lf, BridgeKind::Culmination, e, props)
}

/// `eN:answer(e)` for a yes/no question `e`. Idempotent.
pub fn answer_bridge(lf: &mut LogicalForm, e: &EventLabel, props: &Props) -> Result<EventLabel, ResolveError> {
    bridge(lf, BridgeKind::InferredAnswer, e, props)
}

/// Label for the complement of `e`: the one already recorded, or a fresh
/// one. Only conditions, actions and alternative sets have complements.
pub fn complement_of(lf: &mut LogicalForm, e: &EventLabel, props: &Props) -> Result<EventLabel, ResolveError> {
    if !["condition", "action", "alternatives"].iter().any(|p| props.contains(*p)) {
        return Err(ResolveError::NoComplement(e.clone()));
    }
    let known = lf.items.iter().filter_map(Item::as_term).find_map(|t| match t.args.as_slice() {
        [Arg::Event(a), Arg::Event(b)] if t.pred == "complement" && t.label.is_none() && a == e => Some(b.clone()),
        _ => None,
    });
    Ok(match known {
        Some(l) => l,
        None => lf.fresh_label("e"),
    })
}

/// What adjacency alone contributes between a unit and the one to its
/// left: always `elaboration(right, left)`, and possibly one refined
/// relation licensed by a rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyInference {
    pub base: Term,
    pub refined: Option<Term>,
}

pub fn infer_adjacency_relation(
    left: &Arg,
    left_props: &Props,
    right: &Arg,
    right_props: &Props,
    rules: &[AdjacencyRule],
) -> AdjacencyInference {
    let args = vec![right.clone(), left.clone()];
    let refined = rules
        .iter()
        .find(|r| left_props.contains(&r.left) && right_props.contains(&r.right))
        .map(|r| Term::new(r.relation.clone(), args.clone()));
    AdjacencyInference { base: Term::new("elaboration", args), refined }
}

pub type CompatFn = Arc<dyn Fn(&Props) -> bool + Send + Sync>;

/// Named ranking preferences. Candidates passing the selected predicate
/// are ranked first; the others stay available.
#[derive(Clone)]
pub struct CompatRegistry {
    preds: BTreeMap<String, CompatFn>,
}

impl fmt::Debug for CompatRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.preds.keys()).finish()
    }
}

impl Default for CompatRegistry {
    fn default() -> Self {
        let mut r = CompatRegistry { preds: BTreeMap::new() };
        for prop in ["action", "condition", "state", "process", "culminated", "alternatives"] {
            r.register(&format!("prefer-{prop}"), move |p| p.contains(prop));
        }
        r
    }
}

impl CompatRegistry {
    pub fn register(&mut self, name: &str, pred: impl Fn(&Props) -> bool + Send + Sync + 'static) {
        self.preds.insert(name.to_string(), Arc::new(pred));
    }

    /// A registered predicate, or for an unregistered `prefer-P` the
    /// predicate "has property P".
    pub fn get(&self, name: &str) -> Option<CompatFn> {
        if let Some(f) = self.preds.get(name) {
            return Some(f.clone());
        }
        let prop = name.strip_prefix("prefer-").filter(|p| !p.is_empty())?.to_string();
        Some(Arc::new(move |p: &Props| p.contains(&prop)))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.preds.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// `None` for a bridge that has not been added to the LF yet.
    pub label: Option<EventLabel>,
    /// The clause eventuality it comes from.
    pub source: EventLabel,
    pub clause: String,
    pub position: usize,
    pub bridge: Option<BridgeKind>,
    pub props: Props,
    pub compatible: bool,
}

impl Candidate {
    pub fn is_direct(&self) -> bool {
        self.bridge.is_none()
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.bridge, &self.label) {
            (None, _) => write!(f, "{}[{}]", self.source, self.clause)?,
            (Some(b), Some(l)) => write!(f, "{l}={b}({})[{}]", self.source, self.clause)?,
            (Some(b), None) => write!(f, "{b}({})[{}]", self.source, self.clause)?,
        }
        if self.compatible {
            f.write_str("+")?;
        }
        Ok(())
    }
}

/// Every admissible antecedent for an adverbial, unranked and without
/// any compatibility preference.
pub fn candidate_set(interp: &Interpretation, lf: &LogicalForm, adv: &AdverbialUse, lexicon: &Lexicon) -> Vec<Candidate> {
    let constraint = adv.entry.antecedent_constraint.as_deref().unwrap_or("any");
    let admits = |p: &Props| lexicon.constraints().admits(constraint, p);
    let mut out = Vec::new();
    for c in interp.clauses.iter().filter(|c| c.position < adv.position) {
        let Some(e) = &c.label else { continue };
        if *e == adv.sigma {
            continue;
        }
        if admits(&c.props) {
            out.push(Candidate {
                label: Some(e.clone()),
                source: e.clone(),
                clause: c.id.clone(),
                position: c.position,
                bridge: None,
                props: c.props.clone(),
                compatible: false,
            });
        }
        for kind in [BridgeKind::Culmination, BridgeKind::InferredAnswer] {
            if !admits(&c.props) && c.props.contains(kind.source_prop()) && admits(&kind.props()) {
                out.push(Candidate {
                    label: existing_bridge(lf, kind, e),
                    source: e.clone(),
                    clause: c.id.clone(),
                    position: c.position,
                    bridge: Some(kind),
                    props: kind.props(),
                    compatible: false,
                });
            }
        }
    }
    out
}

/// Compatible first, then direct before bridged, then most recent.
pub fn rank(mut cands: Vec<Candidate>, compat: Option<&CompatFn>) -> Vec<Candidate> {
    for c in &mut cands {
        c.compatible = compat.is_some_and(|f| f(&c.props));
    }
    cands.sort_by_key(|c| (!c.compatible, c.bridge.is_some(), std::cmp::Reverse(c.position)));
    cands
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextEvent {
    pub label: EventLabel,
    /// Clause id, or the bridge that produced it.
    pub source: String,
    pub position: usize,
    pub props: Props,
}

/// Eventualities available to anaphors, in discourse order, with the
/// referents reached from them by bridging.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscourseContext {
    pub events: Vec<ContextEvent>,
    pub associates: BTreeMap<EventLabel, Vec<(EventLabel, BridgeKind)>>,
    /// Right edge of the structure, top first.
    pub right_frontier: Vec<EventLabel>,
}

impl DiscourseContext {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a clause's eventuality. Clauses without one change nothing.
    pub fn extend(&mut self, clause: &ClauseInfo) {
        if let Some(l) = &clause.label {
            self.events.push(ContextEvent {
                label: l.clone(),
                source: clause.id.clone(),
                position: clause.position,
                props: clause.props.clone(),
            });
            self.right_frontier = vec![l.clone()];
        }
    }

    fn record_bridge(&mut self, from: &EventLabel, to: &EventLabel, kind: BridgeKind) {
        let list = self.associates.entry(from.clone()).or_default();
        if list.iter().any(|(l, _)| l == to) {
            return;
        }
        list.push((to.clone(), kind));
        let position = self.events.iter().find(|e| &e.label == from).map(|e| e.position).unwrap_or(0);
        self.events.push(ContextEvent { label: to.clone(), source: kind.to_string(), position, props: kind.props() });
    }
}

/// One resolved anaphor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub surface: String,
    pub position: usize,
    pub var: String,
    pub sigma: Option<EventLabel>,
    pub candidates: Vec<Candidate>,
    pub chosen: EventLabel,
    /// Clause the antecedent comes from, with its position.
    pub antecedent: (String, usize),
    pub case: Option<InteractionCase>,
    pub emitted: Vec<String>,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cands: Vec<String> = self.candidates.iter().map(|c| c.to_string()).collect();
        write!(f, "{}@{} {}", self.surface, self.position, self.var)?;
        if let Some(s) = &self.sigma {
            write!(f, " sigma={s}")?;
        }
        write!(f, " | candidates {} | chosen {}", cands.join(" "), self.chosen)?;
        if let Some(c) = self.case {
            write!(f, " | {c}")?;
        }
        write!(f, " | {}", self.emitted.join(" ^ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub lf: LogicalForm,
    pub resolutions: Vec<Resolution>,
    pub denials: Vec<(String, Denial)>,
    pub context: DiscourseContext,
}

impl Resolved {
    pub fn render_trace(&self) -> String {
        let mut out: String = self.resolutions.iter().map(|r| format!("{r}\n")).collect();
        for (clause, d) in &self.denials {
            let what = match d {
                Denial::Retracted(l) => format!("retracted {l}"),
                Denial::Contradiction(l) => format!("contradicts {l}"),
                Denial::NoMatch => "no match".to_string(),
            };
            out.push_str(&format!("denial {clause} | {what}\n"));
        }
        out
    }
}

pub struct Resolver<'a> {
    lexicon: &'a Lexicon,
    compat: CompatRegistry,
}

impl<'a> Resolver<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Resolver { lexicon, compat: CompatRegistry::default() }
    }

    pub fn with_compat(mut self, compat: CompatRegistry) -> Self {
        self.compat = compat;
        self
    }

    pub fn compat(&self) -> &CompatRegistry {
        &self.compat
    }

    /// Resolves every adverbial and deictic pronoun in textual order.
    pub fn resolve(&self, interp: &Interpretation, compat: Option<&str>) -> Result<Resolved, ResolveError> {
        let pred = match compat {
            Some(name) => Some(self.compat.get(name).ok_or_else(|| ResolveError::UnknownCompat(name.into()))?),
            None => None,
        };
        let mut lf = interp.lf.clone();
        let mut resolutions = Vec::new();
        let mut denials = Vec::new();

        enum Step<'x> {
            Adverbial(&'x AdverbialUse),
            Deictic(usize),
            Denial(usize),
        }
        let mut steps: Vec<(usize, Step)> = interp.adverbials.iter().map(|a| (a.position, Step::Adverbial(a))).collect();
        steps.extend(interp.deictics.iter().enumerate().map(|(i, d)| (d.position, Step::Deictic(i))));
        steps.extend(
            interp.clauses.iter().enumerate().filter(|(_, c)| c.props.contains("denial")).map(|(i, c)| (c.position, Step::Denial(i))),
        );
        steps.sort_by_key(|(p, _)| *p);

        for (_, step) in steps {
            match step {
                Step::Adverbial(adv) => resolutions.push(self.adverbial(interp, &mut lf, adv, pred.as_ref())?),
                Step::Deictic(i) => resolutions.push(deictic(interp, &mut lf, i)?),
                Step::Denial(i) => {
                    let c = &interp.clauses[i];
                    if let Some(d) = denial(&mut lf, c.label.as_ref()) {
                        denials.push((c.id.clone(), d));
                    }
                }
            }
        }
        let mut context = DiscourseContext::new();
        for c in &interp.clauses {
            context.extend(c);
        }
        for t in lf.items.iter().filter_map(Item::as_term) {
            for kind in [BridgeKind::Culmination, BridgeKind::InferredAnswer] {
                if let (Some(to), true, [Arg::Event(from)]) = (t.event_label(), t.pred == kind.predicate(), t.args.as_slice()) {
                    context.record_bridge(from, to, kind);
                }
            }
        }
        context.right_frontier = right_frontier(interp, &lf);
        Ok(Resolved { lf, resolutions, denials, context })
    }

    fn adverbial(
        &self,
        interp: &Interpretation,
        lf: &mut LogicalForm,
        adv: &AdverbialUse,
        compat: Option<&CompatFn>,
    ) -> Result<Resolution, ResolveError> {
        let ranked = rank(candidate_set(interp, lf, adv, self.lexicon), compat);
        let best = ranked.first().cloned().ok_or_else(|| ResolveError::NoCandidate {
            surface: adv.entry.surface.clone(),
            position: adv.position,
            constraint: adv.entry.antecedent_constraint.clone().unwrap_or_else(|| "any".into()),
        })?;
        let source_props = interp.clauses.iter().find(|c| c.label.as_ref() == Some(&best.source)).map(|c| c.props.clone()).unwrap_or_default();
        let chosen = match best.bridge {
            None => best.source.clone(),
            Some(kind) => bridge(lf, kind, &best.source, &source_props)?,
        };
        let mut deps = BTreeMap::new();
        if let Some(ve) = &adv.complement_var {
            deps.insert(ve.clone(), complement_of(lf, &chosen, &best.props)?);
        }
        *lf = lf.resolve_var_with(&adv.var, &chosen, &deps)?;

        let mut emitted = Vec::new();
        if adv.case == InteractionCase::Case4 {
            let rule = defeasible_rule(interp, lf, adv, &chosen);
            lf.remove_label(&adv.label);
            emitted.push(render_item(&Item::Rule(rule.clone())));
            lf.push(Item::Rule(rule));
        } else if let Some(item) = lf.item_by_label(&adv.label) {
            emitted.push(render_item(item));
            if let Some(ve) = &adv.complement_var {
                let alt = &deps[ve];
                emitted.push(format!("complement({chosen},{alt})"));
            }
        }
        if let Some(p) = interp.pending.iter().find(|p| p.over == adv.label) {
            let rel = lf.term_by_label(&adv.label).cloned().ok_or_else(|| ComposeError::ForExampleScope(adv.label.to_string()))?;
            let term = exemplify(&rel, &p.sigma, &p.relation)?;
            emitted.push(render_item(&Item::from(term.clone())));
            *lf.item_by_label_mut(&adv.label).expect("looked up") = Item::from(term);
        }
        let (clause, position) = (best.clause.clone(), best.position);
        Ok(Resolution {
            surface: adv.entry.surface.clone(),
            position: adv.position,
            var: adv.var.clone(),
            sigma: Some(adv.sigma.clone()),
            candidates: ranked,
            chosen,
            antecedent: (clause, position),
            case: Some(adv.case),
            emitted,
        })
    }
}

fn deictic(interp: &Interpretation, lf: &mut LogicalForm, i: usize) -> Result<Resolution, ResolveError> {
    let d = &interp.deictics[i];
    let cands: Vec<Candidate> = interp
        .clauses
        .iter()
        .filter(|c| c.position < d.position)
        .filter_map(|c| {
            c.label.as_ref().map(|l| Candidate {
                label: Some(l.clone()),
                source: l.clone(),
                clause: c.id.clone(),
                position: c.position,
                bridge: None,
                props: c.props.clone(),
                compatible: false,
            })
        })
        .rev()
        .collect();
    let best = cands.first().cloned().ok_or_else(|| ResolveError::NoDeicticAntecedent(d.clause.clone()))?;
    *lf = lf.resolve_var(&d.var, &best.source)?;
    let emitted = lf
        .items
        .iter()
        .filter(|i| {
            let mut labels = BTreeSet::new();
            if let Item::Formula(f) = i {
                collect_args(f, &mut labels);
            }
            labels.contains(&best.source) && i.event_label().is_some_and(|l| l.as_str().starts_with('i'))
        })
        .map(render_item)
        .collect();
    Ok(Resolution {
        surface: d.var.clone(),
        position: d.position,
        var: d.var.clone(),
        sigma: None,
        candidates: cands,
        chosen: best.source.clone(),
        antecedent: (best.clause, best.position),
        case: None,
        emitted,
    })
}

fn collect_args(f: &Formula, out: &mut BTreeSet<EventLabel>) {
    match f {
        Formula::Atom(t) => out.extend(t.args.iter().filter_map(Arg::as_event).cloned()),
        Formula::Not { inner, .. } => collect_args(inner, out),
        Formula::Eq(a, b) => out.extend([a, b].into_iter().filter_map(Arg::as_event).cloned()),
        Formula::And(fs) => fs.iter().for_each(|f| collect_args(f, out)),
    }
}

/// A clause `eN:~(R(...))` marked as a denial withdraws a matching
/// defeasible conclusion.
fn denial(lf: &mut LogicalForm, label: Option<&EventLabel>) -> Option<Denial> {
    let label = label?;
    let denied = match lf.item_by_label(label)? {
        Item::Formula(Formula::Not { inner, .. }) => inner.as_atom()?.clone(),
        _ => return None,
    };
    Some(lf.deny(&denied))
}

/// The most specific relation holding between σ and the antecedent:
/// an inferred one over a structural one.
fn relation_between<'a>(interp: &'a Interpretation, sigma: &EventLabel, ante: &EventLabel) -> Option<&'a Term> {
    let pick = |o: RelationOrigin| interp.relations.iter().find(|r| r.origin == o && r.links(sigma, ante)).map(|r| &r.term);
    pick(RelationOrigin::Inferred).or_else(|| pick(RelationOrigin::Structural)).or_else(|| pick(RelationOrigin::Parallel))
}

/// `R(X, e) > ~(X = σ)`, or, when the matrix clause is generic,
/// `(R(X, E) ^ E:p(Y..)) > ~(X:q(Y..))` abstracting over shared individuals.
fn defeasible_rule(interp: &Interpretation, lf: &LogicalForm, adv: &AdverbialUse, ante: &EventLabel) -> DefeasibleRule {
    let sigma = &adv.sigma;
    let x = Arg::Var("X".into());
    let (pred, sigma_first) = match relation_between(interp, sigma, ante) {
        Some(t) => (t.pred.clone(), t.args.first().and_then(Arg::as_event) == Some(sigma)),
        None => (adv.entry.relation.clone(), true),
    };
    let rel = |other: Arg| {
        let args = if sigma_first { vec![x.clone(), other] } else { vec![other, x.clone()] };
        Formula::Atom(Term::new(pred.clone(), args))
    };
    let generic = interp.clause_by_label(sigma).is_some_and(|c| c.props.contains("generic"));
    let sigma_term = lf.term_by_label(sigma);
    let ante_term = lf.term_by_label(ante);
    if let (true, Some(st), Some(at)) = (generic, sigma_term, ante_term) {
        let shared: Vec<&Arg> =
            st.args.iter().filter(|a| matches!(a, Arg::Ind(_)) && at.args.contains(a)).collect();
        let mut names: Vec<(Arg, Arg)> = Vec::new();
        for a in shared {
            if names.iter().all(|(k, _)| k != a) {
                let name = if names.is_empty() { "Y".to_string() } else { format!("Y{}", names.len() + 1) };
                names.push((a.clone(), Arg::Var(name)));
            }
        }
        let general = |t: &Term, label: Arg| Term {
            label: Some(label),
            pred: t.pred.clone(),
            args: t.args.iter().map(|a| names.iter().find(|(k, _)| k == a).map(|(_, v)| v.clone()).unwrap_or_else(|| a.clone())).collect(),
        };
        let e = Arg::Var("E".into());
        return DefeasibleRule {
            antecedent: Formula::And(vec![rel(e.clone()), Formula::Atom(general(at, e))]),
            consequent: Formula::negation(Formula::Atom(general(st, x))),
        };
    }
    DefeasibleRule {
        antecedent: rel(Arg::Event(ante.clone())),
        consequent: Formula::negation(Formula::Eq(x, Arg::Event(sigma.clone()))),
    }
}

/// Position of the last clause a label covers.
fn span_end(interp: &Interpretation, lf: &LogicalForm, l: &EventLabel, depth: usize) -> usize {
    if let Some(c) = interp.clause_by_label(l) {
        return c.position;
    }
    if depth > 64 {
        return 0;
    }
    let Some(t) = lf.term_by_label(l) else { return 0 };
    t.args.iter().filter_map(Arg::as_event).map(|a| span_end(interp, lf, a, depth + 1)).max().unwrap_or(0)
}

fn right_frontier(interp: &Interpretation, lf: &LogicalForm) -> Vec<EventLabel> {
    let mut out = Vec::new();
    let mut cur = interp.top.as_event().cloned();
    while let Some(l) = cur {
        if out.contains(&l) {
            break;
        }
        out.push(l.clone());
        if interp.clause_by_label(&l).is_some() {
            break;
        }
        cur = lf
            .term_by_label(&l)
            .and_then(|t| t.args.iter().filter_map(Arg::as_event).max_by_key(|a| span_end(interp, lf, a, 0)).cloned());
    }
    out
}
