//! Dependency graphs and the crossing check.

use std::fmt;

use super::{DerivationNode, DerivationTree, NodeTree, Op};
use crate::input::{Discourse, DiscourseToken, LinkKind};
use crate::lexicon::ConnectiveClass;

/// A point in the token stream: a clause or a connective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub position: usize,
    pub name: String,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.name, self.position)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub left: Unit,
    pub right: Unit,
    pub kind: LinkKind,
}

impl Link {
    /// Orders the endpoints by position.
    pub fn new(a: Unit, b: Unit, kind: LinkKind) -> Link {
        if a.position <= b.position {
            Link { left: a, right: b, kind }
        } else {
            Link { left: b, right: a, kind }
        }
    }

    /// Strict interleaving: a < c < b < d (in either order).
    pub fn crosses(&self, other: &Link) -> bool {
        let (a, b) = (self.left.position, self.right.position);
        let (c, d) = (other.left.position, other.right.position);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -- {}", self.left, self.right)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DependencyGraph {
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrossingReport {
    /// Pairs of structural links that cross.
    pub violations: Vec<(Link, Link)>,
    /// Anaphoric links crossing a structural one; allowed.
    pub exempt: Vec<(Link, Link)>,
}

impl CrossingReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_no_crossing(g: &DependencyGraph) -> CrossingReport {
    let mut links = g.links.clone();
    links.sort();
    links.dedup();
    let mut report = CrossingReport::default();
    for (i, x) in links.iter().enumerate() {
        for y in &links[i + 1..] {
            if !x.crosses(y) {
                continue;
            }
            match (x.kind, y.kind) {
                (LinkKind::Structural, LinkKind::Structural) => report.violations.push((x.clone(), y.clone())),
                (LinkKind::Anaphoric, LinkKind::Structural) => report.exempt.push((x.clone(), y.clone())),
                (LinkKind::Structural, LinkKind::Anaphoric) => report.exempt.push((y.clone(), x.clone())),
                (LinkKind::Anaphoric, LinkKind::Anaphoric) => {}
            }
        }
    }
    report
}

fn is_relation(n: &DerivationNode) -> bool {
    match &n.tree {
        NodeTree::Elementary { entry, .. } => entry.class != ConnectiveClass::Adverbial,
        NodeTree::Clause(_) => false,
    }
}

fn anchor_unit(n: &DerivationNode) -> Unit {
    let name = match &n.tree {
        NodeTree::Clause(c) => c.id.clone(),
        NodeTree::Elementary { entry, .. } => entry.surface.replace(' ', "_"),
    };
    Unit { position: n.positions[0], name }
}

/// Head of the whole segment a node spans: the last relation adjoined at
/// its root, or its own anchor.
fn segment_head(n: &DerivationNode) -> Unit {
    n.adjunctions()
        .filter(|e| e.address.is_root() && is_relation(&e.child))
        .last()
        .map(|e| anchor_unit(&e.child))
        .unwrap_or_else(|| anchor_unit(n))
}

fn collect(n: &DerivationNode, out: &mut Vec<Link>) {
    if is_relation(n) {
        let from = anchor_unit(n);
        for e in n.substitutions() {
            out.push(Link::new(from.clone(), segment_head(&e.child), LinkKind::Structural));
        }
    }
    // Aux relations at this node's root take, as left argument, the
    // segment built so far.
    let mut host = anchor_unit(n);
    for e in &n.children {
        if e.op == Op::Adjoin && e.address.is_root() && is_relation(&e.child) {
            let at = anchor_unit(&e.child);
            out.push(Link::new(host.clone(), at.clone(), LinkKind::Structural));
            host = at;
        }
        collect(&e.child, out);
    }
}

impl DependencyGraph {
    /// Structural links of a derivation: each connective to the heads of
    /// its two arguments.
    pub fn from_derivation(d: &DerivationTree) -> DependencyGraph {
        let mut links = Vec::new();
        collect(&d.root, &mut links);
        DependencyGraph { links }
    }

    /// Links given in the input file, between clause positions.
    pub fn from_manual(d: &Discourse) -> DependencyGraph {
        let unit = |id: &str| Unit { position: d.position(id).expect("validated on parse"), name: id.to_string() };
        DependencyGraph { links: d.links.iter().map(|l| Link::new(unit(&l.left), unit(&l.right), l.kind)).collect() }
    }

    pub fn add_anaphoric(&mut self, antecedent: Unit, anaphor: Unit) {
        self.links.push(Link::new(antecedent, anaphor, LinkKind::Anaphoric));
    }

    pub fn sorted(&self) -> Vec<Link> {
        let mut l = self.links.clone();
        l.sort();
        l.dedup();
        l
    }

    /// Report text: every link, then the crossing check.
    pub fn render_report(&self) -> String {
        let report = check_no_crossing(self);
        let mut out = String::new();
        for l in self.sorted() {
            out.push_str(&format!("{} {l}\n", l.kind));
        }
        out.push_str(&format!("violations: {}\n", report.violations.len()));
        for (x, y) in &report.violations {
            out.push_str(&format!("  {x} x {y}\n"));
        }
        out.push_str(&format!("anaphoric crossings: {}\n", report.exempt.len()));
        for (x, y) in &report.exempt {
            out.push_str(&format!("  {x} x {y}\n"));
        }
        out
    }

    /// Graphviz: units left to right, solid structural and dashed
    /// anaphoric edges.
    pub fn to_dot(&self, tokens: &[DiscourseToken]) -> String {
        let mut units: Vec<Unit> = self.links.iter().flat_map(|l| [l.left.clone(), l.right.clone()]).collect();
        units.sort();
        units.dedup();
        let mut out = String::from("digraph dependencies {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for u in &units {
            let text = tokens.get(u.position).map(|t| t.to_string()).unwrap_or_else(|| u.name.clone());
            out.push_str(&format!("  u{} [label=\"{}\"];\n", u.position, text.replace('"', "\\\"")));
        }
        for w in units.windows(2) {
            out.push_str(&format!("  u{} -> u{} [style=invis];\n", w[0].position, w[1].position));
        }
        for l in self.sorted() {
            let style = match l.kind {
                LinkKind::Structural => "solid",
                LinkKind::Anaphoric => "dashed",
            };
            out.push_str(&format!(
                "  u{} -> u{} [style={style}, dir=none, constraint=false];\n",
                l.left.position, l.right.position
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::build_derivation;
    use crate::input::parse_discourse;
    use crate::lexicon::default_lexicon;

    fn unit(p: usize) -> Unit {
        Unit { position: p, name: format!("u{p}") }
    }

    #[test]
    fn interleaving() {
        let a = Link::new(unit(0), unit(2), LinkKind::Structural);
        let b = Link::new(unit(1), unit(3), LinkKind::Structural);
        let c = Link::new(unit(2), unit(3), LinkKind::Structural);
        assert!(a.crosses(&b) && b.crosses(&a));
        assert!(!a.crosses(&c));
        let g = DependencyGraph { links: vec![a.clone(), b.clone()] };
        assert_eq!(check_no_crossing(&g).violations.len(), 1);
        let g = DependencyGraph { links: vec![a, Link::new(unit(1), unit(3), LinkKind::Anaphoric)] };
        let r = check_no_crossing(&g);
        assert!(r.is_clean());
        assert_eq!(r.exempt.len(), 1);
        assert!(check_no_crossing(&DependencyGraph::default()).is_clean());
    }

    #[test]
    fn barolo_links() {
        let d = parse_discourse(
            "CLAUSE T1 | e1:p(a)\nPUNCT .\nCONN so\nCLAUSE T2 | e2:q(a)\nPUNCT .\nCONN but\nCLAUSE T3 | e3:r(a)\nCONN because\nCONN then\nCLAUSE T4 | e4:s(a)\n",
        )
        .unwrap();
        let der = build_derivation(&d.tokens, &default_lexicon()).unwrap();
        let mut g = DependencyGraph::from_derivation(&der);
        let text: Vec<String> = g.sorted().iter().map(|l| l.to_string()).collect();
        assert_eq!(
            text,
            [
                "T1@0 -- so@2",
                "so@2 -- T2@3",
                "so@2 -- but@5",
                "but@5 -- because@7",
                "T3@6 -- because@7",
                "because@7 -- T4@9"
            ]
        );
        assert!(check_no_crossing(&g).is_clean());
        g.add_anaphoric(Unit { position: 3, name: "T2".into() }, Unit { position: 8, name: "then".into() });
        let r = check_no_crossing(&g);
        assert!(r.is_clean());
        assert!(r.exempt.iter().any(|(_, s)| s.to_string() == "because@7 -- T4@9"));
    }
}
