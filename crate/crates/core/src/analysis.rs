//! End-to-end analysis of a `.disc` document.

use thiserror::Error;

use crate::composer::{interpret, ComposeError, Interpretation};
use crate::derivation::graph::{DependencyGraph, Unit};
use crate::derivation::{build_derivation, DerivationError, DerivationTree};
use crate::input::{parse_discourse, Discourse, InputError};
use crate::lexicon::Lexicon;
use crate::resolver::{ResolveError, Resolved, Resolver};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("input: {0}")]
    Input(#[from] InputError),
    #[error("derivation: {0}")]
    Derivation(#[from] DerivationError),
    #[error("composition: {0}")]
    Compose(#[from] ComposeError),
    #[error("resolution: {0}")]
    Resolve(#[from] ResolveError),
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub discourse: Discourse,
    pub derivation: DerivationTree,
    pub interpretation: Interpretation,
    pub resolved: Resolved,
}

pub fn derive(text: &str, lexicon: &Lexicon) -> Result<(Discourse, DerivationTree), AnalysisError> {
    let d = parse_discourse(text)?;
    let tree = build_derivation(&d.tokens, lexicon)?;
    Ok((d, tree))
}

/// Derivation, composition and resolution. `compat` overrides the
/// document's own `COMPAT` record.
pub fn analyze(text: &str, lexicon: &Lexicon, compat: Option<&str>) -> Result<Analysis, AnalysisError> {
    analyze_with(text, &Resolver::new(lexicon), lexicon, compat)
}

pub fn analyze_with(
    text: &str,
    resolver: &Resolver<'_>,
    lexicon: &Lexicon,
    compat: Option<&str>,
) -> Result<Analysis, AnalysisError> {
    let (discourse, derivation) = derive(text, lexicon)?;
    let interpretation = interpret(&derivation, &discourse.rules)?;
    let compat = compat.or(discourse.compat.as_deref());
    let resolved = resolver.resolve(&interpretation, compat)?;
    Ok(Analysis { discourse, derivation, interpretation, resolved })
}

impl Analysis {
    pub fn lf_text(&self) -> String {
        format!("{}\n", self.resolved.lf.pretty_print())
    }

    /// Structural links from the derivation plus one anaphoric link per
    /// resolved anaphor.
    pub fn dependency_graph(&self) -> DependencyGraph {
        let mut g = DependencyGraph::from_derivation(&self.derivation);
        for r in &self.resolved.resolutions {
            let (clause, pos) = &r.antecedent;
            let anaphor = match self.interpretation.deictics.iter().find(|d| d.var == r.var && r.sigma.is_none()) {
                Some(d) => Unit { position: d.position, name: d.clause.clone() },
                None => Unit { position: r.position, name: r.surface.replace(' ', "_") },
            };
            g.add_anaphoric(Unit { position: *pos, name: clause.clone() }, anaphor);
        }
        g
    }
}

/// The graph to check for crossing: the links given in the document when
/// there are any, otherwise those of the full analysis.
pub fn crossing_graph(text: &str, lexicon: &Lexicon, compat: Option<&str>) -> Result<(Discourse, DependencyGraph), AnalysisError> {
    let d = parse_discourse(text)?;
    if !d.links.is_empty() {
        let g = DependencyGraph::from_manual(&d);
        return Ok((d, g));
    }
    let a = analyze(text, lexicon, compat)?;
    let g = a.dependency_graph();
    Ok((a.discourse, g))
}
