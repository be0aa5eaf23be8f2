//! Derivation trees: building them from token streams and replaying them.

pub mod graph;

use std::fmt;

use thiserror::Error;

use crate::grammar::{self, Address, ElementaryTree, GrammarError, Node, NodeKind, TreeKind};
use crate::input::{ClauseToken, DiscourseToken};
use crate::lexicon::{ConnectiveClass, ConnectiveEntry, Lexicon, TreeFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("connective `{0}` is not in the lexicon")]
    UnresolvableConnective(String),
    #[error("connective `{surface}` cannot be used here (token {position})")]
    Misplaced { surface: String, position: usize },
    #[error("connective `{surface}` is ambiguous ({readings}); add a hint")]
    AmbiguousWithoutHint { surface: String, readings: String },
    #[error("dangling argument: {0}")]
    DanglingArgument(String),
    #[error("unexpected token `{token}` at {position}")]
    Unexpected { token: String, position: usize },
    #[error("incomplete derivation: {0}")]
    Incomplete(String),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Subst,
    Adjoin,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Subst => "subst",
            Op::Adjoin => "adjoin",
        })
    }
}

/// Which tree a derivation node stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeTree {
    Clause(ClauseToken),
    Elementary {
        /// Instance name, e.g. `because-mid`, `punct1`, `for_ex2`.
        name: String,
        tree: ElementaryTree,
        entry: ConnectiveEntry,
        /// Shared by the two members of one tree-set instance.
        set: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationNode {
    pub id: usize,
    pub tree: NodeTree,
    /// Token positions of the clause or of the anchors.
    pub positions: Vec<usize>,
    pub children: Vec<DerivationEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationEdge {
    pub op: Op,
    pub address: Address,
    pub child: DerivationNode,
}

impl DerivationNode {
    /// `T1`, `α:because-mid`, `β:then`.
    pub fn name(&self) -> String {
        match &self.tree {
            NodeTree::Clause(c) => c.id.clone(),
            NodeTree::Elementary { name, tree, .. } => match tree.kind {
                TreeKind::Initial => format!("α:{name}"),
                TreeKind::Auxiliary => format!("β:{name}"),
            },
        }
    }

    pub fn entry(&self) -> Option<&ConnectiveEntry> {
        match &self.tree {
            NodeTree::Elementary { entry, .. } => Some(entry),
            NodeTree::Clause(_) => None,
        }
    }

    pub fn clause(&self) -> Option<&ClauseToken> {
        match &self.tree {
            NodeTree::Clause(c) => Some(c),
            NodeTree::Elementary { .. } => None,
        }
    }

    pub fn elementary_name(&self) -> Option<&str> {
        match &self.tree {
            NodeTree::Elementary { name, .. } => Some(name),
            NodeTree::Clause(_) => None,
        }
    }

    pub fn set_id(&self) -> Option<usize> {
        match &self.tree {
            NodeTree::Elementary { set, .. } => *set,
            NodeTree::Clause(_) => None,
        }
    }

    pub fn substitutions(&self) -> impl Iterator<Item = &DerivationEdge> {
        self.children.iter().filter(|e| e.op == Op::Subst)
    }

    pub fn adjunctions(&self) -> impl Iterator<Item = &DerivationEdge> {
        self.children.iter().filter(|e| e.op == Op::Adjoin)
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&DerivationNode> {
        let mut out = vec![self];
        for e in &self.children {
            out.extend(e.child.nodes());
        }
        out
    }

    fn elementary_root(&self) -> Node {
        match &self.tree {
            NodeTree::Clause(c) => grammar::clause_tree(&c.id).root,
            NodeTree::Elementary { tree, .. } => tree.root.clone(),
        }
    }

    /// Derived tree of this subtree. Substitutions first, then adjunctions
    /// from the deepest address up; adjunctions at one address stack
    /// outward in sequence.
    fn replay_node(&self) -> Result<Node, DerivationError> {
        let mut tree = self.elementary_root();
        for e in self.substitutions() {
            let filler = e.child.replay_node()?;
            tree = grammar::substitute(&tree, &e.address, &filler)?;
        }
        let mut adj: Vec<&DerivationEdge> = self.adjunctions().collect();
        adj.sort_by(|a, b| b.address.cmp(&a.address));
        for e in adj {
            let aux = e.child.replay_node()?;
            tree = grammar::adjoin(&tree, &e.address, &aux)?;
        }
        Ok(tree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTree {
    pub root: DerivationNode,
}

impl DerivationTree {
    pub fn nodes(&self) -> Vec<&DerivationNode> {
        self.root.nodes()
    }

    /// Derived tree with every site filled.
    pub fn replay(&self) -> Result<Node, DerivationError> {
        let tree = self.root.replay_node()?;
        let open = tree.addresses_of(NodeKind::SubstitutionSite);
        if let Some(a) = open.first() {
            return Err(DerivationError::Incomplete(format!("open substitution site at {a}")));
        }
        if tree.foot_count() > 0 {
            return Err(DerivationError::Incomplete("derived tree still has a foot node".into()));
        }
        Ok(tree)
    }

    /// One line per node: operation, address, instance name.
    pub fn dump(&self) -> String {
        fn go(n: &DerivationNode, depth: usize, out: &mut String) {
            for e in &n.children {
                out.push_str(&format!("{}{} {} {}\n", "  ".repeat(depth), e.op, e.address, e.child.name()));
                go(&e.child, depth + 1, out);
            }
        }
        let mut out = format!("{}\n", self.root.name());
        go(&self.root, 1, &mut out);
        out
    }

    /// Graphviz: solid edges for substitution, dashed for adjunction.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph derivation {\n  node [shape=plaintext];\n");
        for n in self.nodes() {
            out.push_str(&format!("  d{} [label=\"{}\"];\n", n.id, n.name()));
        }
        for n in self.nodes() {
            for e in &n.children {
                let style = match e.op {
                    Op::Subst => "solid",
                    Op::Adjoin => "dashed",
                };
                out.push_str(&format!(
                    "  d{} -> d{} [style={style}, label=\"{}\"];\n",
                    n.id, e.child.id, e.address
                ));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Every tree set used has both members present.
    pub fn tree_sets_complete(&self) -> bool {
        let mut counts = std::collections::BTreeMap::<usize, usize>::new();
        for n in self.nodes() {
            if let Some(s) = n.set_id() {
                *counts.entry(s).or_default() += 1;
            }
        }
        counts.values().all(|&c| c == 2)
    }
}

/// A partially built discourse segment.
struct Seg {
    node: DerivationNode,
    /// `for_ex2` members waiting for the relation that takes this segment
    /// as its right daughter.
    pending: Vec<DerivationNode>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    /// Start of a unit: adverbials, preposed subordinators, paired openers.
    UnitStart,
    /// Between two units.
    Between,
}

struct Builder<'a> {
    tokens: &'a [DiscourseToken],
    lexicon: &'a Lexicon,
    pos: usize,
    next_id: usize,
    next_set: usize,
    puncts: usize,
    stops: Vec<String>,
}

fn hint_matches(entry: &ConnectiveEntry, hint: &str) -> bool {
    let h = hint.to_ascii_lowercase();
    h == "marked" && entry.marked
        || h == entry.class.to_string()
        || h == entry.tree_family.name()
        || entry.tree_family.templates().contains(&h.as_str())
        || h == entry.relation
}

impl<'a> Builder<'a> {
    fn peek(&self) -> Option<&'a DiscourseToken> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, i: usize) -> Option<&'a DiscourseToken> {
        self.tokens.get(self.pos + i)
    }

    fn id(&mut self) -> usize {
        self.next_id += 1;
        self.next_id - 1
    }

    fn stop(&self) -> Option<&str> {
        self.stops.last().map(String::as_str)
    }

    fn is_stop(&self, tok: Option<&DiscourseToken>) -> bool {
        matches!(tok, Some(DiscourseToken::Connective { surface, .. }) if Some(surface.as_str()) == self.stop())
    }

    /// Readings of a connective that fit the slot.
    fn readings(&self, surface: &str, hint: Option<&str>, slot: Slot) -> Result<Vec<&'a ConnectiveEntry>, DerivationError> {
        let all = self.lexicon.lookup(surface);
        if all.is_empty() {
            return Err(DerivationError::UnresolvableConnective(surface.to_string()));
        }
        Ok(all
            .into_iter()
            .filter(|e| match hint {
                Some(h) => hint_matches(e, h),
                None => !e.marked,
            })
            .filter(|e| !e.second_anchor)
            .filter(|e| match slot {
                Slot::UnitStart => matches!(e.class, ConnectiveClass::Adverbial | ConnectiveClass::Subord)
                    || e.class == ConnectiveClass::Paired && e.partner.is_some(),
                Slot::Between => matches!(e.class, ConnectiveClass::Subord | ConnectiveClass::Coord),
            })
            .collect())
    }

    /// The single reading at the current token, if it is a connective.
    fn reading(&self, slot: Slot) -> Result<Option<&'a ConnectiveEntry>, DerivationError> {
        let Some(DiscourseToken::Connective { surface, hint }) = self.peek() else {
            return Ok(None);
        };
        if self.is_stop(self.peek()) {
            return Ok(None);
        }
        let rs = self.readings(surface, hint.as_deref(), slot)?;
        match rs.len() {
            0 => Ok(None),
            1 => Ok(Some(rs[0])),
            _ => Err(DerivationError::AmbiguousWithoutHint {
                surface: surface.clone(),
                readings: rs.iter().map(|e| format!("{}/{}", e.class, e.tree_family)).collect::<Vec<_>>().join(", "),
            }),
        }
    }

    fn elementary(&mut self, name: String, template: &str, anchors: &[&str], entry: &ConnectiveEntry, positions: Vec<usize>) -> Result<DerivationNode, DerivationError> {
        let tree = grammar::instantiate(template, anchors)?;
        Ok(DerivationNode {
            id: self.id(),
            tree: NodeTree::Elementary { name, tree, entry: entry.clone(), set: None },
            positions,
            children: Vec::new(),
        })
    }

    fn unexpected(&self) -> DerivationError {
        match self.peek() {
            Some(t) => DerivationError::Unexpected { token: t.to_string(), position: self.pos },
            None => DerivationError::DanglingArgument("input ended early".into()),
        }
    }

    fn discourse(&mut self) -> Result<Seg, DerivationError> {
        let mut cur = self.sentence()?;
        while let Some(DiscourseToken::Punct(mark)) = self.peek() {
            let punct_pos = self.pos;
            if self.absorbs_punct()? {
                self.pos += 1;
                cur = self.sentence_continue(cur)?;
                continue;
            }
            let entry = self.punct_entry(mark)?;
            self.pos += 1;
            let right = self.sentence()?;
            self.puncts += 1;
            let name = format!("punct{}", self.puncts);
            let aux = self.elementary(name, "punct-aux", &[mark.as_str()], entry, vec![punct_pos])?;
            cur = self.attach_aux(cur, aux, right);
        }
        Ok(cur)
    }

    fn punct_entry(&self, mark: &str) -> Result<&'a ConnectiveEntry, DerivationError> {
        self.lexicon
            .lookup(mark)
            .into_iter()
            .find(|e| e.class == ConnectiveClass::Punct)
            .ok_or_else(|| DerivationError::UnresolvableConnective(mark.to_string()))
    }

    /// Punctuation followed by the end, a closing anchor, a coordinator or
    /// more punctuation contributes no tree of its own.
    fn absorbs_punct(&self) -> Result<bool, DerivationError> {
        let next = self.peek_at(1);
        if next.is_none() || self.is_stop(next) || matches!(next, Some(DiscourseToken::Punct(_))) {
            return Ok(true);
        }
        if let Some(DiscourseToken::Connective { surface, hint }) = next {
            let rs = self.readings(surface, hint.as_deref(), Slot::Between)?;
            return Ok(rs.iter().any(|e| e.class == ConnectiveClass::Coord));
        }
        Ok(false)
    }

    fn sentence(&mut self) -> Result<Seg, DerivationError> {
        let first = self.tight()?;
        self.sentence_continue(first)
    }

    fn sentence_continue(&mut self, mut cur: Seg) -> Result<Seg, DerivationError> {
        while let Some(entry) = self.reading(Slot::Between)? {
            if entry.class != ConnectiveClass::Coord {
                break;
            }
            let pos = self.pos;
            self.pos += 1;
            let right = self.tight_or_dangling(&entry.surface)?;
            let surface = entry.surface.as_str();
            cur = match entry.tree_family {
                TreeFamily::ConjAux => {
                    let aux = self.elementary(surface.replace(' ', "-"), "conj-aux", &[surface], entry, vec![pos])?;
                    self.attach_aux(cur, aux, right)
                }
                _ => {
                    let alpha = self.elementary(surface.replace(' ', "-"), "coord-initial", &[surface], entry, vec![pos])?;
                    self.attach_initial(alpha, [(Address(vec![1]), cur), (Address(vec![3]), right)])
                }
            };
        }
        Ok(cur)
    }

    fn tight_or_dangling(&mut self, after: &str) -> Result<Seg, DerivationError> {
        if self.peek().is_none() || matches!(self.peek(), Some(DiscourseToken::Punct(_))) || self.is_stop(self.peek()) {
            return Err(DerivationError::DanglingArgument(format!("`{after}` has no right argument")));
        }
        self.tight()
    }

    fn tight(&mut self) -> Result<Seg, DerivationError> {
        let first = self.unit()?;
        self.tight_from(first)
    }

    fn unit_or_dangling(&mut self, after: &str) -> Result<Seg, DerivationError> {
        if self.peek().is_none() || matches!(self.peek(), Some(DiscourseToken::Punct(_))) || self.is_stop(self.peek()) {
            return Err(DerivationError::DanglingArgument(format!("`{after}` has no right argument")));
        }
        self.unit()
    }

    fn unit(&mut self) -> Result<Seg, DerivationError> {
        let mut advs: Vec<(usize, &'a ConnectiveEntry)> = Vec::new();
        while let Some(entry) = self.reading(Slot::UnitStart)? {
            if entry.class != ConnectiveClass::Adverbial {
                break;
            }
            advs.push((self.pos, entry));
            self.pos += 1;
        }
        let mut seg = match self.peek() {
            Some(DiscourseToken::Clause(c)) => {
                let node = DerivationNode { id: self.id(), tree: NodeTree::Clause(c.clone()), positions: vec![self.pos], children: Vec::new() };
                self.pos += 1;
                Seg { node, pending: Vec::new() }
            }
            Some(DiscourseToken::Connective { .. }) => match self.reading(Slot::UnitStart)? {
                Some(e) if e.class == ConnectiveClass::Subord => {
                    let pos = self.pos;
                    self.pos += 1;
                    let first = self.unit_or_dangling(&e.surface)?;
                    let left = self.tight_from(first)?;
                    let right = self.tight_or_dangling(&e.surface)?;
                    let s = e.surface.as_str();
                    let alpha = self.elementary(format!("{}-pre", s.replace(' ', "-")), "subconj-pre", &[s], e, vec![pos])?;
                    self.attach_initial(alpha, [(Address(vec![2]), left), (Address(vec![3]), right)])
                }
                Some(e) if e.class == ConnectiveClass::Paired => self.paired(e)?,
                _ => {
                    let DiscourseToken::Connective { surface, .. } = self.peek().expect("peeked") else { unreachable!() };
                    if self.lexicon.lookup(surface).is_empty() {
                        return Err(DerivationError::UnresolvableConnective(surface.clone()));
                    }
                    return Err(DerivationError::Misplaced { surface: surface.clone(), position: self.pos });
                }
            },
            _ => {
                if let Some((_, e)) = advs.last() {
                    return Err(DerivationError::DanglingArgument(format!("`{}` has no host clause", e.surface)));
                }
                return Err(self.unexpected());
            }
        };
        // Innermost first, so that later adjunctions wrap earlier ones and
        // anchors keep their textual order.
        for (pos, entry) in advs.into_iter().rev() {
            if entry.tree_family == TreeFamily::ForExampleSet {
                let set = grammar::instantiate_set("for-example-set", &entry.surface)?;
                let [ex1, ex2] = set.members;
                let sid = self.next_set;
                self.next_set += 1;
                let n1 = DerivationNode {
                    id: self.id(),
                    tree: NodeTree::Elementary { name: "for_ex1".into(), tree: ex1, entry: entry.clone(), set: Some(sid) },
                    positions: vec![pos],
                    children: Vec::new(),
                };
                let n2 = DerivationNode {
                    id: self.id(),
                    tree: NodeTree::Elementary { name: "for_ex2".into(), tree: ex2, entry: entry.clone(), set: Some(sid) },
                    positions: vec![pos],
                    children: Vec::new(),
                };
                seg.node.children.push(DerivationEdge { op: Op::Adjoin, address: Address::root(), child: n1 });
                seg.pending.push(n2);
            } else {
                let s = entry.surface.as_str();
                let beta = self.elementary(s.replace(' ', "-"), "adverbial-aux", &[s], entry, vec![pos])?;
                seg.node.children.push(DerivationEdge { op: Op::Adjoin, address: Address::root(), child: beta });
            }
        }
        Ok(seg)
    }

    /// Continues a tight unit from an already built first unit.
    fn tight_from(&mut self, first: Seg) -> Result<Seg, DerivationError> {
        let mut cur = first;
        while let Some(entry) = self.reading(Slot::Between)? {
            if entry.class != ConnectiveClass::Subord {
                break;
            }
            let pos = self.pos;
            self.pos += 1;
            let right = self.unit_or_dangling(&entry.surface)?;
            let s = entry.surface.as_str();
            let alpha = self.elementary(format!("{}-mid", s.replace(' ', "-")), "subconj-mid", &[s], entry, vec![pos])?;
            cur = self.attach_initial(alpha, [(Address(vec![1]), cur), (Address(vec![3]), right)]);
        }
        Ok(cur)
    }

    fn paired(&mut self, first: &'a ConnectiveEntry) -> Result<Seg, DerivationError> {
        let partner = first.partner.clone().expect("paired opener has a partner");
        let pos1 = self.pos;
        self.pos += 1;
        self.stops.push(partner.clone());
        let left = if self.is_stop(self.peek()) || self.peek().is_none() {
            Err(DerivationError::DanglingArgument(format!("`{}` has no first argument", first.surface)))
        } else {
            self.discourse()
        };
        self.stops.pop();
        let left = left?;
        if !matches!(self.peek(), Some(DiscourseToken::Connective { surface, .. }) if *surface == partner) {
            return Err(DerivationError::DanglingArgument(format!("`{}` is missing `{partner}`", first.surface)));
        }
        let pos2 = self.pos;
        self.pos += 1;
        let right = self.tight_or_dangling(&partner)?;
        let right = self.sentence_continue(right)?;
        let name = first.surface.replace(' ', "-");
        let alpha = self.elementary(name, "paired", &[first.surface.as_str(), partner.as_str()], first, vec![pos1, pos2])?;
        Ok(self.attach_initial(alpha, [(Address(vec![2]), left), (Address(vec![4]), right)]))
    }

    fn attach_initial(&mut self, mut alpha: DerivationNode, args: [(Address, Seg); 2]) -> Seg {
        let [(la, left), (ra, right)] = args;
        alpha.children.push(DerivationEdge { op: Op::Subst, address: la, child: left.node });
        alpha.children.push(DerivationEdge { op: Op::Subst, address: ra, child: right.node });
        for ex2 in right.pending {
            alpha.children.push(DerivationEdge { op: Op::Adjoin, address: Address::root(), child: ex2 });
        }
        Seg { node: alpha, pending: left.pending }
    }

    fn attach_aux(&mut self, mut host: Seg, mut beta: DerivationNode, right: Seg) -> Seg {
        beta.children.push(DerivationEdge { op: Op::Subst, address: Address(vec![3]), child: right.node });
        for ex2 in right.pending {
            beta.children.push(DerivationEdge { op: Op::Adjoin, address: Address::root(), child: ex2 });
        }
        host.node.children.push(DerivationEdge { op: Op::Adjoin, address: Address::root(), child: beta });
        host
    }
}

/// Deterministic left-to-right construction of a derivation.
pub fn build_derivation(tokens: &[DiscourseToken], lexicon: &Lexicon) -> Result<DerivationTree, DerivationError> {
    if tokens.is_empty() {
        return Err(DerivationError::Incomplete("empty token stream".into()));
    }
    let mut b = Builder { tokens, lexicon, pos: 0, next_id: 0, next_set: 0, puncts: 0, stops: Vec::new() };
    let seg = b.discourse()?;
    if b.pos < tokens.len() {
        return Err(b.unexpected());
    }
    if !seg.pending.is_empty() {
        return Err(DerivationError::DanglingArgument("`for example` has no enclosing relation".into()));
    }
    Ok(DerivationTree { root: seg.node })
}

/// Clause ids in token order.
pub fn clause_sequence(tokens: &[DiscourseToken]) -> Vec<String> {
    tokens
        .iter()
        .filter_map(|t| match t {
            DiscourseToken::Clause(c) => Some(c.id.clone()),
            _ => None,
        })
        .collect()
}
