//! Connective inventory.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

const DEFAULT_LEXICON: &str = include_str!("../lexicon/default.lex");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
}

fn schema(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Schema { line, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnectiveClass {
    Coord,
    Subord,
    Paired,
    Adverbial,
    Punct,
}

impl ConnectiveClass {
    pub fn is_structural(self) -> bool {
        !matches!(self, ConnectiveClass::Adverbial)
    }
}

impl FromStr for ConnectiveClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "coord" => ConnectiveClass::Coord,
            "subord" => ConnectiveClass::Subord,
            "paired" => ConnectiveClass::Paired,
            "adverbial" => ConnectiveClass::Adverbial,
            "punct" => ConnectiveClass::Punct,
            _ => return Err(format!("unknown class `{s}`")),
        })
    }
}

impl fmt::Display for ConnectiveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConnectiveClass::Coord => "coord",
            ConnectiveClass::Subord => "subord",
            ConnectiveClass::Paired => "paired",
            ConnectiveClass::Adverbial => "adverbial",
            ConnectiveClass::Punct => "punct",
        };
        f.write_str(s)
    }
}

/// Tree family names. Each one names a grammar template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeFamily {
    /// Subordinate conjunction; instantiated as `subconj-mid` or `subconj-pre`.
    Subconj,
    Paired,
    CoordInitial,
    PunctAux,
    ConjAux,
    AdverbialAux,
    ForExampleSet,
}

impl TreeFamily {
    pub const ALL: [TreeFamily; 7] = [
        TreeFamily::Subconj,
        TreeFamily::Paired,
        TreeFamily::CoordInitial,
        TreeFamily::PunctAux,
        TreeFamily::ConjAux,
        TreeFamily::AdverbialAux,
        TreeFamily::ForExampleSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeFamily::Subconj => "subconj",
            TreeFamily::Paired => "paired",
            TreeFamily::CoordInitial => "coord-initial",
            TreeFamily::PunctAux => "punct-aux",
            TreeFamily::ConjAux => "conj-aux",
            TreeFamily::AdverbialAux => "adverbial-aux",
            TreeFamily::ForExampleSet => "for-example-set",
        }
    }

    /// Grammar templates the family can instantiate.
    pub fn templates(self) -> &'static [&'static str] {
        match self {
            TreeFamily::Subconj => &["subconj-mid", "subconj-pre"],
            TreeFamily::Paired => &["paired"],
            TreeFamily::CoordInitial => &["coord-initial"],
            TreeFamily::PunctAux => &["punct-aux"],
            TreeFamily::ConjAux => &["conj-aux"],
            TreeFamily::AdverbialAux => &["adverbial-aux"],
            TreeFamily::ForExampleSet => &["for-example-set"],
        }
    }
}

impl FromStr for TreeFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.to_ascii_lowercase();
        TreeFamily::ALL
            .into_iter()
            .find(|f| f.name() == s || f.templates().contains(&s.as_str()))
            .ok_or_else(|| format!("unknown tree family `{s}`"))
    }
}

impl fmt::Display for TreeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InteractionCase {
    /// Anaphoric argument and structural relation are both kept.
    Case1,
    /// The structural relation is embedded inside the adverbial's relation.
    Case2,
    /// The adverbial abstracts over the structural relation.
    Case3,
    /// The adverbial's presupposition becomes a defeasible rule.
    Case4,
}

impl FromStr for InteractionCase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "case1" | "1" => InteractionCase::Case1,
            "case2" | "2" => InteractionCase::Case2,
            "case3" | "3" | "case3-parasitic" => InteractionCase::Case3,
            "case4" | "4" | "case4-defeasible" => InteractionCase::Case4,
            _ => return Err(format!("unknown interaction case `{s}`")),
        })
    }
}

impl fmt::Display for InteractionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            InteractionCase::Case1 => 1,
            InteractionCase::Case2 => 2,
            InteractionCase::Case3 => 3,
            InteractionCase::Case4 => 4,
        };
        write!(f, "case{n}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectiveEntry {
    pub surface: String,
    pub class: ConnectiveClass,
    pub relation: String,
    pub tree_family: TreeFamily,
    pub antecedent_constraint: Option<String>,
    pub interaction_case: Option<InteractionCase>,
    pub complement_forming: bool,
    /// Only chosen when the input names this reading explicitly.
    pub marked: bool,
    /// The subordinate (or left-hand paired) argument fills the relation's
    /// first slot.
    pub sub_first: bool,
    /// For the first anchor of a paired construction, the second anchor.
    pub partner: Option<String>,
    /// Closes a paired construction; never starts one.
    pub second_anchor: bool,
    /// Relation inferred in addition, defeasibly.
    pub refine: Option<String>,
}

impl ConnectiveEntry {
    pub fn new(surface: &str, class: ConnectiveClass, relation: &str, tree_family: TreeFamily) -> Self {
        ConnectiveEntry {
            surface: normalize(surface),
            class,
            relation: relation.to_string(),
            tree_family,
            antecedent_constraint: None,
            interaction_case: None,
            complement_forming: false,
            marked: false,
            sub_first: false,
            partner: None,
            second_anchor: false,
            refine: None,
        }
    }

    pub fn is_adverbial(&self) -> bool {
        self.class == ConnectiveClass::Adverbial
    }

    fn validate(&self, constraints: &ConstraintRegistry) -> Result<(), String> {
        if self.class.is_structural() {
            if self.antecedent_constraint.is_some() {
                return Err("structural entries take no antecedent constraint".into());
            }
            if self.interaction_case.is_some() {
                return Err("structural entries take no interaction case".into());
            }
        } else if self.interaction_case.is_none() {
            return Err("adverbial entries need an interaction case".into());
        }
        if let Some(c) = &self.antecedent_constraint {
            if !constraints.contains(c) {
                return Err(format!("unknown constraint `{c}`"));
            }
        }
        match self.interaction_case {
            Some(InteractionCase::Case3) => {
                if !matches!(self.relation.as_str(), "exemplification" | "exemplify") {
                    return Err("case3 entries relate by exemplification only".into());
                }
                if self.tree_family != TreeFamily::ForExampleSet {
                    return Err("case3 entries use the for-example-set family".into());
                }
            }
            Some(_) if self.antecedent_constraint.is_none() => {
                return Err("anaphoric adverbials need an antecedent constraint".into());
            }
            _ => {}
        }
        if self.class == ConnectiveClass::Punct && self.relation != "elaboration" {
            return Err("punctuation relates by elaboration".into());
        }
        if self.complement_forming && !self.is_adverbial() {
            return Err("only adverbials can be complement-forming".into());
        }
        let family_ok = match self.class {
            ConnectiveClass::Subord => self.tree_family == TreeFamily::Subconj,
            ConnectiveClass::Coord => matches!(self.tree_family, TreeFamily::CoordInitial | TreeFamily::ConjAux),
            ConnectiveClass::Paired => self.tree_family == TreeFamily::Paired,
            ConnectiveClass::Punct => self.tree_family == TreeFamily::PunctAux,
            ConnectiveClass::Adverbial => {
                matches!(self.tree_family, TreeFamily::AdverbialAux | TreeFamily::ForExampleSet)
            }
        };
        if !family_ok {
            return Err(format!("tree family {} does not fit class {}", self.tree_family, self.class));
        }
        if self.class == ConnectiveClass::Paired && self.partner.is_none() && !self.second_anchor {
            return Err("paired entries need `partner=` or `second`".into());
        }
        Ok(())
    }

    fn flags_text(&self) -> String {
        let mut flags = Vec::new();
        if self.complement_forming {
            flags.push("complement".to_string());
        }
        if self.marked {
            flags.push("marked".into());
        }
        if self.sub_first {
            flags.push("subfirst".into());
        }
        if self.second_anchor {
            flags.push("second".into());
        }
        if let Some(p) = &self.partner {
            flags.push(format!("partner={p}"));
        }
        if let Some(r) = &self.refine {
            flags.push(format!("refine={r}"));
        }
        if flags.is_empty() {
            "-".into()
        } else {
            flags.join(",")
        }
    }
}

impl fmt::Display for ConnectiveEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {} | {} | {} | {}",
            self.surface,
            self.class,
            self.relation,
            self.tree_family,
            self.antecedent_constraint.as_deref().unwrap_or("-"),
            self.interaction_case.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            self.flags_text()
        )
    }
}

/// Properties of a candidate antecedent, e.g. `culminated`, `condition`.
pub type Props = BTreeSet<String>;

pub type ConstraintFn = Arc<dyn Fn(&Props) -> bool + Send + Sync>;

/// Named predicates over candidate antecedents.
#[derive(Clone)]
pub struct ConstraintRegistry {
    preds: BTreeMap<String, ConstraintFn>,
}

impl fmt::Debug for ConstraintRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.preds.keys()).finish()
    }
}

fn has_any(props: &Props, wanted: &[&str]) -> bool {
    wanted.iter().any(|w| props.contains(*w))
}

impl Default for ConstraintRegistry {
    fn default() -> Self {
        let mut r = ConstraintRegistry { preds: BTreeMap::new() };
        r.register("any", |_| true);
        r.register("culminated-eventuality", |p| has_any(p, &["culminated"]));
        r.register("complement-admitting", |p| has_any(p, &["condition", "action", "alternatives"]));
        r.register("alternative-admitting", |p| has_any(p, &["action", "alternatives", "condition"]));
        r
    }
}

impl ConstraintRegistry {
    pub fn register(&mut self, name: &str, pred: impl Fn(&Props) -> bool + Send + Sync + 'static) {
        self.preds.insert(name.to_string(), Arc::new(pred));
    }

    pub fn contains(&self, name: &str) -> bool {
        self.preds.contains_key(name)
    }

    /// Unknown constraint names never admit anything.
    pub fn admits(&self, name: &str, props: &Props) -> bool {
        self.preds.get(name).is_some_and(|p| p(props))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.preds.keys().map(String::as_str)
    }
}

/// Lower-cases and collapses whitespace.
pub fn normalize(surface: &str) -> String {
    surface.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: Vec<ConnectiveEntry>,
    constraints: ConstraintRegistry,
}

impl Default for Lexicon {
    fn default() -> Self {
        default_lexicon()
    }
}

pub fn default_lexicon() -> Lexicon {
    let mut lex = Lexicon::empty();
    lex.load_str(DEFAULT_LEXICON).expect("bundled lexicon is well-formed");
    lex
}

/// Defaults extended (or overridden) by a lexicon document.
pub fn load_lexicon(document: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = default_lexicon();
    lex.load_str(document)?;
    Ok(lex)
}

impl Lexicon {
    pub fn empty() -> Self {
        Lexicon { entries: Vec::new(), constraints: ConstraintRegistry::default() }
    }

    pub fn with_constraints(mut self, constraints: ConstraintRegistry) -> Self {
        self.constraints = constraints;
        self
    }

    pub fn constraints(&self) -> &ConstraintRegistry {
        &self.constraints
    }

    pub fn entries(&self) -> &[ConnectiveEntry] {
        &self.entries
    }

    /// Adds an entry. An existing entry with the same surface, class and
    /// tree family is replaced.
    pub fn insert(&mut self, entry: ConnectiveEntry) -> Result<(), String> {
        entry.validate(&self.constraints)?;
        match self.entries.iter_mut().find(|e| {
            e.surface == entry.surface && e.class == entry.class && e.tree_family == entry.tree_family
        }) {
            Some(slot) => *slot = entry,
            None => self.entries.push(entry),
        }
        Ok(())
    }

    /// Reads `surface | class | relation | treeFamily | constraint | case | flags`
    /// records. Nothing is changed if any line fails.
    pub fn load_str(&mut self, document: &str) -> Result<(), LexiconError> {
        let mut staged = self.clone();
        for (i, raw) in document.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let entry = parse_record(text).map_err(|m| schema(line, m))?;
            staged.insert(entry).map_err(|m| schema(line, m))?;
        }
        *self = staged;
        Ok(())
    }

    /// All entries for exactly this surface form.
    pub fn lookup(&self, surface: &str) -> Vec<&ConnectiveEntry> {
        let key = normalize(surface);
        self.entries.iter().filter(|e| e.surface == key).collect()
    }

    /// Longest connective at the start of `words`, as (word count, entries).
    pub fn longest_match<S: AsRef<str>>(&self, words: &[S]) -> Option<(usize, Vec<&ConnectiveEntry>)> {
        let max = self.entries.iter().map(|e| e.surface.split(' ').count()).max().unwrap_or(0);
        for n in (1..=max.min(words.len())).rev() {
            let candidate = words[..n].iter().map(|w| w.as_ref()).collect::<Vec<_>>().join(" ");
            let hits = self.lookup(&candidate);
            if !hits.is_empty() {
                return Some((n, hits));
            }
        }
        None
    }

    /// Splits text into connectives and other words, longest match first.
    pub fn tokenize<'a>(&self, text: &'a str) -> Vec<(String, bool)> {
        let words: Vec<&'a str> = text.split_whitespace().collect();
        let lowered: Vec<String> = words.iter().map(|w| w.to_lowercase()).collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < words.len() {
            match self.longest_match(&lowered[i..]) {
                Some((n, _)) => {
                    out.push((lowered[i..i + n].join(" "), true));
                    i += n;
                }
                None => {
                    out.push((words[i].to_string(), false));
                    i += 1;
                }
            }
        }
        out
    }
}

fn field(f: &str) -> Option<&str> {
    let f = f.trim();
    (!f.is_empty() && f != "-").then_some(f)
}

fn parse_record(text: &str) -> Result<ConnectiveEntry, String> {
    let fields: Vec<&str> = text.split('|').collect();
    if fields.len() != 7 {
        return Err(format!("expected 7 `|`-separated fields, found {}", fields.len()));
    }
    let surface = field(fields[0]).ok_or("empty surface")?;
    let class: ConnectiveClass = field(fields[1]).ok_or("empty class")?.parse()?;
    let relation = field(fields[2]).ok_or("empty relation")?;
    let family: TreeFamily = field(fields[3]).ok_or("empty tree family")?.parse()?;
    let mut e = ConnectiveEntry::new(surface, class, relation, family);
    e.antecedent_constraint = field(fields[4]).map(str::to_string);
    e.interaction_case = field(fields[5]).map(str::parse).transpose()?;
    if let Some(flags) = field(fields[6]) {
        for flag in flags.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            match flag.split_once('=') {
                Some(("partner", v)) => e.partner = Some(normalize(v)),
                Some(("refine", v)) => e.refine = Some(v.trim().to_string()),
                None if flag == "complement" => e.complement_forming = true,
                None if flag == "marked" => e.marked = true,
                None if flag == "subfirst" => e.sub_first = true,
                None if flag == "second" => e.second_anchor = true,
                _ => return Err(format!("unknown flag `{flag}`")),
            }
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn props(ps: &[&str]) -> Props {
        ps.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn then_requires_culmination() {
        let lex = default_lexicon();
        let hits = lex.lookup("then");
        assert_eq!(hits.len(), 1);
        let e = hits[0];
        assert_eq!(e.class, ConnectiveClass::Adverbial);
        assert_eq!(e.relation, "after");
        assert_eq!(e.antecedent_constraint.as_deref(), Some("culminated-eventuality"));
        assert!(lex.constraints().admits("culminated-eventuality", &props(&["culminated"])));
        assert!(!lex.constraints().admits("culminated-eventuality", &props(&["process"])));
    }

    #[test]
    fn otherwise_and_so() {
        let lex = default_lexicon();
        let o = lex.lookup("otherwise")[0];
        assert!(o.complement_forming);
        assert_eq!(o.interaction_case, Some(InteractionCase::Case2));
        let so = lex.lookup("So");
        assert_eq!(so.len(), 1);
        assert_eq!(so[0].class, ConnectiveClass::Coord);
        assert_eq!(so[0].relation, "result");
    }

    #[test]
    fn lookups() {
        let lex = default_lexicon();
        assert_eq!(lex.lookup("for  example").len(), 1);
        assert_eq!(lex.lookup("for example")[0].interaction_case, Some(InteractionCase::Case3));
        assert!(lex.lookup("zebra").is_empty());
        let and = lex.lookup("and");
        assert_eq!(and.len(), 2);
        assert_eq!(and.iter().filter(|e| e.marked).count(), 1);
    }

    #[test]
    fn required_inventory() {
        let lex = default_lexicon();
        for s in [
            "because", "although", "while", "after", "if", "so", "and", "or", "but", ".", ";",
            "on the one hand", "on the other hand", "not only", "but also",
        ] {
            assert!(lex.lookup(s).iter().any(|e| e.class.is_structural()), "{s}");
        }
        for (s, case) in [
            ("then", InteractionCase::Case1),
            ("instead", InteractionCase::Case1),
            ("otherwise", InteractionCase::Case2),
            ("nevertheless", InteractionCase::Case4),
            ("though", InteractionCase::Case4),
            ("for example", InteractionCase::Case3),
            ("by contrast", InteractionCase::Case1),
            ("meanwhile", InteractionCase::Case1),
        ] {
            assert_eq!(lex.lookup(s)[0].interaction_case, Some(case), "{s}");
        }
    }

    #[test]
    fn longest_match_wins() {
        let lex = default_lexicon();
        let toks = lex.tokenize("For example he never drinks");
        assert_eq!(toks[0], ("for example".to_string(), true));
        assert_eq!(toks[1], ("he".to_string(), false));
        let (n, _) = lex.longest_match(&["on", "the", "other", "hand", "x"]).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn loading() {
        let before = default_lexicon();
        let same = load_lexicon("").unwrap();
        assert_eq!(before.entries(), same.entries());

        let lex = load_lexicon(
            "# extra reading\non the other hand | adverbial | contrast | adverbial-aux | any | case1 | -\n",
        )
        .unwrap();
        assert_eq!(lex.lookup("on the other hand").len(), 2);

        let err = load_lexicon("\n\nfoo | nonsense | r | subconj | - | - | -").unwrap_err();
        assert_eq!(err, LexiconError::Schema { line: 3, message: "unknown class `nonsense`".into() });
        assert!(load_lexicon("because | subord | explanation | subconj | any | - | -").is_err());
        assert!(load_lexicon("x | adverbial | r | adverbial-aux | nope | case1 | -").is_err());
        assert!(load_lexicon("x | punct | result | punct-aux | - | - | -").is_err());
    }

    #[test]
    fn entries_round_trip_through_text() {
        let lex = default_lexicon();
        let text: String = lex.entries().iter().map(|e| format!("{e}\n")).collect();
        let mut again = Lexicon::empty();
        again.load_str(&text).unwrap();
        assert_eq!(lex.entries(), again.entries());
    }

    #[test]
    fn every_family_names_a_template() {
        for f in TreeFamily::ALL {
            assert!(!f.templates().is_empty());
        }
    }
}
