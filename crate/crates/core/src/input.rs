//! Annotated discourse files (`.disc`).
//!
//! ```text
//! # comment
//! CLAUSE T1 | e1:love(j,barolo) ^ john(j) | state
//! CONN so
//! CONN and [marked]
//! PUNCT .
//! CLAUSE T2 | DPRO | negated
//! COMPAT prefer-action
//! RULE explanation <- negative-evaluation evidence
//! LINK T1 T3 structural
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::lexicon::Props;
use crate::lf::{parse_lf_items, EventLabel, Item, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Lf { line: usize, source: ParseError },
    #[error("line {line}: duplicate clause id `{id}`")]
    DuplicateClause { line: usize, id: String },
    #[error("empty discourse")]
    Empty,
    #[error("a discourse cannot start with punctuation")]
    BadStart,
}

/// What a clause denotes: its own eventuality, or a deictic pronoun
/// ("this") that picks one up from context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClauseTop {
    Label(EventLabel),
    Deictic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseToken {
    pub id: String,
    pub items: Vec<Item>,
    pub top: ClauseTop,
    pub props: Props,
}

impl ClauseToken {
    pub fn has(&self, prop: &str) -> bool {
        self.props.contains(prop)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscourseToken {
    Clause(ClauseToken),
    Connective { surface: String, hint: Option<String> },
    Punct(String),
}

impl fmt::Display for DiscourseToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiscourseToken::Clause(c) => f.write_str(&c.id),
            DiscourseToken::Connective { surface, hint: Some(h) } => write!(f, "{surface} [{h}]"),
            DiscourseToken::Connective { surface, hint: None } => f.write_str(surface),
            DiscourseToken::Punct(p) => f.write_str(p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkKind {
    Structural,
    Anaphoric,
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkKind::Structural => "structural",
            LinkKind::Anaphoric => "anaphoric",
        })
    }
}

/// A dependency given directly in the input, between two clause ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManualLink {
    pub left: String,
    pub right: String,
    pub kind: LinkKind,
}

/// Adjacency inference: when the left unit has `left` and the right unit
/// has `right`, `relation(right, left)` is concluded defeasibly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyRule {
    pub relation: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Discourse {
    pub tokens: Vec<DiscourseToken>,
    pub links: Vec<ManualLink>,
    pub compat: Option<String>,
    pub rules: Vec<AdjacencyRule>,
}

impl Discourse {
    pub fn clauses(&self) -> impl Iterator<Item = &ClauseToken> {
        self.tokens.iter().filter_map(|t| match t {
            DiscourseToken::Clause(c) => Some(c),
            _ => None,
        })
    }

    pub fn clause(&self, id: &str) -> Option<&ClauseToken> {
        self.clauses().find(|c| c.id == id)
    }

    /// Token index of a clause.
    pub fn position(&self, id: &str) -> Option<usize> {
        self.tokens.iter().position(|t| matches!(t, DiscourseToken::Clause(c) if c.id == id))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> InputError {
    InputError::Syntax { line, message: message.into() }
}

fn parse_clause(line: usize, rest: &str) -> Result<ClauseToken, InputError> {
    let mut parts = rest.splitn(3, '|');
    let id = parts.next().unwrap_or("").trim();
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(syntax(line, "CLAUSE needs a single-word id"));
    }
    let lf_text = parts.next().ok_or_else(|| syntax(line, "CLAUSE needs `| lf`"))?.trim();
    let props: Props = parts
        .next()
        .unwrap_or("")
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty() && *p != "-")
        .map(str::to_string)
        .collect();
    if lf_text == "DPRO" {
        return Ok(ClauseToken { id: id.to_string(), items: Vec::new(), top: ClauseTop::Deictic, props });
    }
    let items = parse_lf_items(lf_text).map_err(|source| InputError::Lf { line, source })?;
    let top = items
        .iter()
        .find_map(|i| i.event_label().cloned())
        .ok_or_else(|| syntax(line, "clause LF has no labelled eventuality"))?;
    Ok(ClauseToken { id: id.to_string(), items, top: ClauseTop::Label(top), props })
}

fn parse_conn(line: usize, rest: &str) -> Result<DiscourseToken, InputError> {
    let rest = rest.trim();
    let (surface, hint) = match rest.strip_suffix(']').and_then(|r| r.rsplit_once('[')) {
        Some((s, h)) => (s.trim(), Some(h.trim().to_string())),
        None => (rest, None),
    };
    if surface.is_empty() {
        return Err(syntax(line, "CONN needs a surface form"));
    }
    Ok(DiscourseToken::Connective { surface: crate::lexicon::normalize(surface), hint })
}

pub fn parse_discourse(text: &str) -> Result<Discourse, InputError> {
    let mut d = Discourse::default();
    let mut ids = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match kw {
            "CLAUSE" => {
                let c = parse_clause(line, rest)?;
                if !ids.insert(c.id.clone()) {
                    return Err(InputError::DuplicateClause { line, id: c.id });
                }
                d.tokens.push(DiscourseToken::Clause(c));
            }
            "CONN" => d.tokens.push(parse_conn(line, rest)?),
            "PUNCT" => {
                let mark = rest.trim();
                if mark.is_empty() {
                    return Err(syntax(line, "PUNCT needs a mark"));
                }
                d.tokens.push(DiscourseToken::Punct(mark.to_string()));
            }
            "LINK" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                let kind = match f.get(2).copied() {
                    Some("structural") => LinkKind::Structural,
                    Some("anaphoric") => LinkKind::Anaphoric,
                    _ => return Err(syntax(line, "LINK a b structural|anaphoric")),
                };
                if f.len() != 3 {
                    return Err(syntax(line, "LINK a b structural|anaphoric"));
                }
                d.links.push(ManualLink { left: f[0].into(), right: f[1].into(), kind });
            }
            "COMPAT" => {
                let name = rest.trim();
                if name.is_empty() {
                    return Err(syntax(line, "COMPAT needs a name"));
                }
                d.compat = Some(name.to_string());
            }
            "RULE" => {
                let (rel, conds) =
                    rest.split_once("<-").ok_or_else(|| syntax(line, "RULE relation <- left right"))?;
                let conds: Vec<&str> = conds.split_whitespace().collect();
                let rel = rel.trim();
                if conds.len() != 2 || rel.is_empty() {
                    return Err(syntax(line, "RULE relation <- left right"));
                }
                d.rules.push(AdjacencyRule {
                    relation: rel.to_string(),
                    left: conds[0].to_string(),
                    right: conds[1].to_string(),
                });
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    match d.tokens.first() {
        None => Err(InputError::Empty),
        Some(DiscourseToken::Punct(_)) => Err(InputError::BadStart),
        Some(_) => {
            for l in &d.links {
                for id in [&l.left, &l.right] {
                    if !ids.contains(id) {
                        return Err(syntax(0, format!("LINK mentions unknown clause `{id}`")));
                    }
                }
            }
            Ok(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records() {
        let d = parse_discourse(
            "# trust\nCLAUSE T1 | e1:trust(you,j) | negative-evaluation\nCONN because\nCLAUSE T2 | e2:never_return(j) | evidence, generic\nCONN for example\nCONN and [marked]\nPUNCT .\nCLAUSE T3 | DPRO | negated\nCOMPAT prefer-action\nRULE explanation <- negative-evaluation evidence\nLINK T1 T3 structural\n",
        )
        .unwrap();
        assert_eq!(d.tokens.len(), 7);
        let t2 = d.clause("T2").unwrap();
        assert_eq!(t2.top, ClauseTop::Label(EventLabel::new("e2")));
        assert!(t2.has("generic") && t2.has("evidence"));
        assert_eq!(d.clause("T3").unwrap().top, ClauseTop::Deictic);
        assert_eq!(
            d.tokens[3],
            DiscourseToken::Connective { surface: "for example".into(), hint: None }
        );
        assert_eq!(d.tokens[4], DiscourseToken::Connective { surface: "and".into(), hint: Some("marked".into()) });
        assert_eq!(d.compat.as_deref(), Some("prefer-action"));
        assert_eq!(d.rules[0].left, "negative-evaluation");
        assert_eq!(d.links[0].kind, LinkKind::Structural);
        assert_eq!(d.position("T3"), Some(6));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_discourse(""), Err(InputError::Empty));
        assert_eq!(parse_discourse("# only a comment\n"), Err(InputError::Empty));
        assert_eq!(parse_discourse("PUNCT .\nCLAUSE T1 | e1:p(a)"), Err(InputError::BadStart));
        assert!(matches!(
            parse_discourse("CLAUSE T1 | e1:p(a)\nCLAUSE T1 | e2:q(a)"),
            Err(InputError::DuplicateClause { line: 2, .. })
        ));
        assert!(matches!(parse_discourse("CLAUSE T1 | e1:p(a"), Err(InputError::Lf { line: 1, .. })));
        assert!(matches!(parse_discourse("FOO x"), Err(InputError::Syntax { line: 1, .. })));
        assert!(parse_discourse("CLAUSE T1 | john(j)").is_err());
        assert!(parse_discourse("CLAUSE T1 | e1:p(a)\nLINK T1 T9 structural").is_err());
    }
}
