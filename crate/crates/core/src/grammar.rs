//! Elementary trees and the substitution/adjunction calculus.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("unknown template `{0}`")]
    UnknownTemplate(String),
    #[error("no node at address {0}")]
    NoSuchNode(Address),
    #[error("node at {0} is not a substitution site")]
    NotASubstitutionSite(Address),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("node at {0} does not admit adjunction")]
    NotAdjoinable(Address),
    #[error("template `{template}` takes {expected} anchor(s), got {got}")]
    AnchorCount { template: String, expected: usize, got: usize },
    #[error("bad address `{0}`")]
    BadAddress(String),
}

/// Gorn address with 1-based child indices. The root is printed as `0`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(pub Vec<usize>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Address {
        let mut v = self.0.clone();
        v.push(i);
        Address(v)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for Address {
    type Err = GrammarError;
    fn from_str(s: &str) -> Result<Self, GrammarError> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(Address::root());
        }
        s.split('.')
            .map(|p| p.parse::<usize>().ok().filter(|&i| i > 0))
            .collect::<Option<Vec<_>>>()
            .map(Address)
            .ok_or_else(|| GrammarError::BadAddress(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeLabel {
    Dc,
    Anchor(String),
    Clause(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Internal,
    SubstitutionSite,
    Foot,
    Anchor,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: NodeLabel,
    pub kind: NodeKind,
    pub children: Vec<Node>,
}

impl Node {
    pub fn dc(children: Vec<Node>) -> Node {
        Node { label: NodeLabel::Dc, kind: NodeKind::Internal, children }
    }

    pub fn site() -> Node {
        Node { label: NodeLabel::Dc, kind: NodeKind::SubstitutionSite, children: Vec::new() }
    }

    pub fn foot() -> Node {
        Node { label: NodeLabel::Dc, kind: NodeKind::Foot, children: Vec::new() }
    }

    pub fn anchor(text: &str) -> Node {
        Node { label: NodeLabel::Anchor(text.to_string()), kind: NodeKind::Anchor, children: Vec::new() }
    }

    pub fn clause(id: &str) -> Node {
        Node { label: NodeLabel::Clause(id.to_string()), kind: NodeKind::Leaf, children: Vec::new() }
    }

    pub fn get(&self, addr: &Address) -> Option<&Node> {
        let mut n = self;
        for &i in &addr.0 {
            n = n.children.get(i.checked_sub(1)?)?;
        }
        Some(n)
    }

    fn get_mut(&mut self, addr: &Address) -> Option<&mut Node> {
        let mut n = self;
        for &i in &addr.0 {
            n = n.children.get_mut(i.checked_sub(1)?)?;
        }
        Some(n)
    }

    /// Pre-order walk with addresses.
    pub fn walk(&self) -> Vec<(Address, &Node)> {
        let mut out = Vec::new();
        let mut stack = vec![(Address::root(), self)];
        while let Some((a, n)) = stack.pop() {
            for (i, c) in n.children.iter().enumerate().rev() {
                stack.push((a.child(i + 1), c));
            }
            out.push((a, n));
        }
        out
    }

    pub fn addresses_of(&self, kind: NodeKind) -> Vec<Address> {
        self.walk().into_iter().filter(|(_, n)| n.kind == kind).map(|(a, _)| a).collect()
    }

    pub fn foot_count(&self) -> usize {
        self.addresses_of(NodeKind::Foot).len()
    }

    /// Clause ids in left-to-right order.
    pub fn clause_yield(&self) -> Vec<String> {
        self.walk()
            .into_iter()
            .filter_map(|(_, n)| match &n.label {
                NodeLabel::Clause(id) => Some(id.clone()),
                _ => None,
            })
            .collect()
    }

    /// Labelled bracketing, e.g. `(Dc (Dc T1) because (Dc T2))`.
    pub fn bracketing(&self) -> String {
        match (&self.label, self.kind) {
            (NodeLabel::Dc, NodeKind::SubstitutionSite) => "Dc↓".into(),
            (NodeLabel::Dc, NodeKind::Foot) => "Dc*".into(),
            (NodeLabel::Clause(id), _) => id.clone(),
            (NodeLabel::Anchor(t), _) if t.is_empty() => "◇".into(),
            (NodeLabel::Anchor(t), _) if t.contains(' ') => format!("\"{t}\""),
            (NodeLabel::Anchor(t), _) => t.clone(),
            (NodeLabel::Dc, _) => {
                let inner: Vec<String> = self.children.iter().map(Node::bracketing).collect();
                if inner.is_empty() {
                    "(Dc)".into()
                } else {
                    format!("(Dc {})", inner.join(" "))
                }
            }
        }
    }

    /// Graphviz rendering.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  node [shape=plaintext];\n");
        let ids: Vec<(Address, &Node)> = self.walk();
        let id_of = |a: &Address| format!("n{}", a.0.iter().map(|i| format!("_{i}")).collect::<String>());
        for (a, n) in &ids {
            let label = match (&n.label, n.kind) {
                (NodeLabel::Dc, NodeKind::SubstitutionSite) => "Dc↓".to_string(),
                (NodeLabel::Dc, NodeKind::Foot) => "Dc*".to_string(),
                (NodeLabel::Dc, _) => "Dc".to_string(),
                (NodeLabel::Anchor(t), _) => t.clone(),
                (NodeLabel::Clause(id), _) => id.clone(),
            };
            out.push_str(&format!("  {} [label=\"{}\"];\n", id_of(a), label.replace('"', "\\\"")));
        }
        for (a, n) in &ids {
            for i in 1..=n.children.len() {
                out.push_str(&format!("  {} -> {};\n", id_of(a), id_of(&a.child(i))));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracketing())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    Initial,
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryTree {
    pub id: String,
    pub kind: TreeKind,
    pub root: Node,
    pub anchors: Vec<String>,
}

impl ElementaryTree {
    fn new(id: &str, root: Node) -> Self {
        let kind = if root.foot_count() > 0 { TreeKind::Auxiliary } else { TreeKind::Initial };
        let anchors = root
            .walk()
            .into_iter()
            .filter_map(|(_, n)| match &n.label {
                NodeLabel::Anchor(t) => Some(t.clone()),
                _ => None,
            })
            .collect();
        ElementaryTree { id: id.to_string(), kind, root, anchors }
    }

    /// Binds anchor texts in left-to-right order.
    pub fn bind(mut self, anchors: &[&str]) -> Result<Self, GrammarError> {
        if anchors.len() != self.anchors.len() {
            return Err(GrammarError::AnchorCount {
                template: self.id.clone(),
                expected: self.anchors.len(),
                got: anchors.len(),
            });
        }
        let addrs = self.root.addresses_of(NodeKind::Anchor);
        for (a, text) in addrs.iter().zip(anchors) {
            self.root.get_mut(a).expect("address from walk").label = NodeLabel::Anchor(text.to_string());
        }
        self.anchors = anchors.iter().map(|s| s.to_string()).collect();
        Ok(self)
    }

    pub fn substitution_sites(&self) -> Vec<Address> {
        self.root.addresses_of(NodeKind::SubstitutionSite)
    }

    pub fn foot(&self) -> Option<Address> {
        self.root.addresses_of(NodeKind::Foot).into_iter().next()
    }
}

/// A pair of trees that are always used together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSet {
    pub id: String,
    pub members: [ElementaryTree; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Template {
    Tree(ElementaryTree),
    Set(TreeSet),
}

pub const TEMPLATE_NAMES: [&str; 8] = [
    "subconj-mid",
    "subconj-pre",
    "paired",
    "coord-initial",
    "punct-aux",
    "conj-aux",
    "adverbial-aux",
    "for-example-set",
];

/// A fresh template instance with unbound anchors.
pub fn template(name: &str) -> Result<Template, GrammarError> {
    let a = || Node::anchor("");
    let t = |root: Node| Template::Tree(ElementaryTree::new(name, root));
    Ok(match name {
        "subconj-mid" | "coord-initial" => t(Node::dc(vec![Node::site(), a(), Node::site()])),
        "subconj-pre" => t(Node::dc(vec![a(), Node::site(), Node::site()])),
        "paired" => t(Node::dc(vec![a(), Node::site(), a(), Node::site()])),
        "punct-aux" | "conj-aux" => t(Node::dc(vec![Node::foot(), a(), Node::site()])),
        "adverbial-aux" => t(Node::dc(vec![a(), Node::foot()])),
        "for-example-set" => Template::Set(TreeSet {
            id: name.to_string(),
            members: [
                ElementaryTree::new("for_ex1", Node::dc(vec![a(), Node::foot()])),
                ElementaryTree::new("for_ex2", Node::dc(vec![Node::foot()])),
            ],
        }),
        _ => return Err(GrammarError::UnknownTemplate(name.to_string())),
    })
}

/// A single-tree template with its anchors bound.
pub fn instantiate(name: &str, anchors: &[&str]) -> Result<ElementaryTree, GrammarError> {
    match template(name)? {
        Template::Tree(t) => t.bind(anchors),
        Template::Set(_) => Err(GrammarError::UnknownTemplate(format!("{name} is a tree set"))),
    }
}

/// The for-example tree set with the clause-level member anchored.
pub fn instantiate_set(name: &str, anchor: &str) -> Result<TreeSet, GrammarError> {
    match template(name)? {
        Template::Set(mut s) => {
            s.members[0] = s.members[0].clone().bind(&[anchor])?;
            Ok(s)
        }
        Template::Tree(_) => Err(GrammarError::UnknownTemplate(format!("{name} is not a tree set"))),
    }
}

/// Initial tree for an atomic clause unit: `(Dc T1)`.
pub fn clause_tree(id: &str) -> ElementaryTree {
    ElementaryTree { id: id.to_string(), kind: TreeKind::Initial, root: Node::dc(vec![Node::clause(id)]), anchors: Vec::new() }
}

/// Replaces the substitution site at `addr` by `filler`.
pub fn substitute(host: &Node, addr: &Address, filler: &Node) -> Result<Node, GrammarError> {
    let site = host.get(addr).ok_or_else(|| GrammarError::NoSuchNode(addr.clone()))?;
    if site.kind != NodeKind::SubstitutionSite {
        return Err(GrammarError::NotASubstitutionSite(addr.clone()));
    }
    if filler.foot_count() > 0 {
        return Err(GrammarError::LabelMismatch("auxiliary trees cannot fill a substitution site".into()));
    }
    if filler.label != NodeLabel::Dc {
        return Err(GrammarError::LabelMismatch("filler is not rooted in Dc".into()));
    }
    let mut out = host.clone();
    *out.get_mut(addr).expect("checked") = filler.clone();
    Ok(out)
}

/// Adjoins `aux` at `addr`: the subtree there moves under the foot.
pub fn adjoin(host: &Node, addr: &Address, aux: &Node) -> Result<Node, GrammarError> {
    let target = host.get(addr).ok_or_else(|| GrammarError::NoSuchNode(addr.clone()))?;
    if target.kind != NodeKind::Internal || target.label != NodeLabel::Dc {
        return Err(GrammarError::NotAdjoinable(addr.clone()));
    }
    let feet = aux.addresses_of(NodeKind::Foot);
    if feet.len() != 1 {
        return Err(GrammarError::LabelMismatch(format!("auxiliary tree needs one foot, has {}", feet.len())));
    }
    if aux.label != NodeLabel::Dc {
        return Err(GrammarError::LabelMismatch("auxiliary root is not Dc".into()));
    }
    let mut wrapped = aux.clone();
    *wrapped.get_mut(&feet[0]).expect("foot address") = target.clone();
    let mut out = host.clone();
    *out.get_mut(addr).expect("checked") = wrapped;
    Ok(out)
}
