//! Command-line front end.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::analysis::{analyze_with, crossing_graph, derive, AnalysisError};
use crate::composer::interpret;
use crate::derivation::graph::check_no_crossing;
use crate::input::parse_discourse;
use crate::lexicon::{default_lexicon, load_lexicon, Lexicon, LexiconError};
use crate::resolver::Resolver;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ANALYSIS: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Derive,
    Compose,
    Resolve,
    CheckCrossing,
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Emit {
    Lf,
    Derivation,
    DerivedDot,
    DerivationDot,
    Trace,
    GraphDot,
    Crossing,
}

impl Emit {
    fn extension(self) -> &'static str {
        match self {
            Emit::Lf => "lf",
            Emit::Derivation => "derivation",
            Emit::DerivedDot => "derived.dot",
            Emit::DerivationDot => "derivation.dot",
            Emit::Trace => "trace",
            Emit::GraphDot => "graph.dot",
            Emit::Crossing => "crossing",
        }
    }
}

impl fmt::Display for Emit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

/// Analyse annotated discourse files.
#[derive(Debug, Clone, Parser)]
#[command(name = "dltag", version)]
pub struct RunConfig {
    /// A `.disc` file, or the corpus directory in corpus mode.
    pub input: PathBuf,
    /// Extra lexicon entries, loaded over the built-in ones.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Resolve)]
    pub mode: Mode,
    /// Outputs to produce; defaults depend on the mode.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub emit: Vec<Emit>,
    /// Compatibility predicate used to rank antecedents.
    #[arg(long)]
    pub compat: Option<String>,
    /// Write each output to DIR/<stem>.<ext> instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Corpus mode: rewrite the golden files instead of comparing.
    #[arg(long)]
    pub bless: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Lexicon { path: String, source: LexiconError },
    #[error("{path}: {source}")]
    Analysis { path: String, source: AnalysisError },
    #[error("{0}")]
    Mismatch(String),
    #[error("{0} structural crossing violation(s)")]
    Crossing(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => EXIT_MISMATCH,
            _ => EXIT_ANALYSIS,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_config_lexicon(cfg: &RunConfig) -> Result<Lexicon, CliError> {
    match &cfg.lexicon {
        None => Ok(default_lexicon()),
        Some(p) => load_lexicon(&read(p)?).map_err(|source| CliError::Lexicon { path: p.display().to_string(), source }),
    }
}

fn default_emits(mode: Mode) -> Vec<Emit> {
    match mode {
        Mode::Derive => vec![Emit::Derivation],
        Mode::Compose | Mode::Resolve => vec![Emit::Lf],
        Mode::CheckCrossing => vec![Emit::Crossing],
        Mode::Corpus => Vec::new(),
    }
}

/// Outputs for one file, in emit order.
pub fn outputs(cfg: &RunConfig, lexicon: &Lexicon, text: &str) -> Result<Vec<(Emit, String)>, AnalysisError> {
    let mut emits = if cfg.emit.is_empty() { default_emits(cfg.mode) } else { cfg.emit.clone() };
    emits.dedup();
    let mut out = Vec::new();
    match cfg.mode {
        Mode::Derive => {
            let (_, tree) = derive(text, lexicon)?;
            for e in emits {
                let s = match e {
                    Emit::Derivation => tree.dump(),
                    Emit::DerivationDot => tree.to_dot(),
                    Emit::DerivedDot => tree.replay()?.to_dot("derived"),
                    _ => continue,
                };
                out.push((e, s));
            }
        }
        Mode::Compose => {
            let (d, tree) = derive(text, lexicon)?;
            let interp = interpret(&tree, &d.rules)?;
            for e in emits {
                let s = match e {
                    Emit::Lf => format!("{}\n", interp.lf.pretty_print()),
                    Emit::Trace => interp.render_trace(),
                    Emit::Derivation => tree.dump(),
                    Emit::DerivationDot => tree.to_dot(),
                    Emit::DerivedDot => tree.replay()?.to_dot("derived"),
                    _ => continue,
                };
                out.push((e, s));
            }
        }
        Mode::Resolve => {
            let a = analyze_with(text, &Resolver::new(lexicon), lexicon, cfg.compat.as_deref())?;
            for e in emits {
                let s = match e {
                    Emit::Lf => a.lf_text(),
                    Emit::Trace => a.resolved.render_trace(),
                    Emit::Derivation => a.derivation.dump(),
                    Emit::DerivationDot => a.derivation.to_dot(),
                    Emit::DerivedDot => a.derivation.replay()?.to_dot("derived"),
                    Emit::GraphDot => a.dependency_graph().to_dot(&a.discourse.tokens),
                    Emit::Crossing => a.dependency_graph().render_report(),
                };
                out.push((e, s));
            }
        }
        Mode::CheckCrossing => {
            let (d, g) = crossing_graph(text, lexicon, cfg.compat.as_deref())?;
            for e in emits {
                let s = match e {
                    Emit::Crossing => g.render_report(),
                    Emit::GraphDot => g.to_dot(&d.tokens),
                    _ => continue,
                };
                out.push((e, s));
            }
        }
        Mode::Corpus => unreachable!("handled by run_corpus"),
    }
    Ok(out)
}

/// Golden outputs of one corpus file: the crossing report alone for
/// files that give their links by hand.
pub fn corpus_outputs(lexicon: &Lexicon, text: &str) -> Result<Vec<(Emit, String)>, AnalysisError> {
    let d = parse_discourse(text)?;
    if !d.links.is_empty() {
        let (_, g) = crossing_graph(text, lexicon, None)?;
        return Ok(vec![(Emit::Crossing, g.render_report())]);
    }
    let a = analyze_with(text, &Resolver::new(lexicon), lexicon, None)?;
    Ok(vec![
        (Emit::Lf, a.lf_text()),
        (Emit::Trace, a.resolved.render_trace()),
        (Emit::Crossing, a.dependency_graph().render_report()),
    ])
}

fn first_difference(expected: &str, actual: &str) -> String {
    let (mut e, mut a) = (expected.lines(), actual.lines());
    for n in 1.. {
        match (e.next(), a.next()) {
            (None, None) => break,
            (x, y) if x == y => continue,
            (x, y) => return format!("line {n}: expected {:?}, got {:?}", x.unwrap_or("<eof>"), y.unwrap_or("<eof>")),
        }
    }
    "trailing newline differs".into()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Runs every `.disc` file of a directory against its goldens. Files are
/// analysed concurrently; the report is in file-name order.
pub fn run_corpus(dir: &Path, lexicon: &Lexicon, bless: bool) -> Result<CorpusReport, CliError> {
    let io = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    files.sort();
    let inputs: Vec<&PathBuf> = files.iter().filter(|p| p.extension().is_some_and(|x| x == "disc")).collect();
    let texts: Vec<String> = inputs.iter().map(|p| read(p)).collect::<Result<_, _>>()?;
    let results: Vec<Result<Vec<(Emit, String)>, AnalysisError>> = std::thread::scope(|s| {
        let handles: Vec<_> = texts.iter().map(|t| s.spawn(|| corpus_outputs(lexicon, t))).collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
    });

    let mut report = CorpusReport { checked: 0, failures: Vec::new() };
    let mut covered = std::collections::BTreeSet::new();
    for (path, result) in inputs.iter().zip(results) {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        report.checked += 1;
        let outs = match result {
            Ok(o) => o,
            Err(e) => {
                report.failures.push(format!("{stem}: {e}"));
                continue;
            }
        };
        for (emit, actual) in outs {
            let golden = dir.join(format!("{stem}.{}", emit.extension()));
            covered.insert(golden.clone());
            if bless {
                write(&golden, &actual)?;
                continue;
            }
            match std::fs::read_to_string(&golden) {
                Err(_) => report.failures.push(format!("{stem}.{}: missing golden", emit.extension())),
                Ok(expected) if expected != actual => report
                    .failures
                    .push(format!("{stem}.{}: {}", emit.extension(), first_difference(&expected, &actual))),
                Ok(_) => {}
            }
        }
    }
    if !bless {
        for f in &files {
            let name = f.file_name().and_then(|s| s.to_str()).unwrap_or_default();
            let golden = ["lf", "trace", "crossing"].iter().any(|x| name.ends_with(&format!(".{x}")));
            if golden && !covered.contains(f) {
                report.failures.push(format!("{name}: golden without a matching input"));
            }
        }
    }
    Ok(report)
}

/// Runs one configuration. Returns what was written to stdout.
pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let lexicon = load_config_lexicon(cfg)?;
    let console = |e: std::io::Error| CliError::Io { path: "<stdout>".into(), source: e };
    if cfg.mode == Mode::Corpus {
        let report = run_corpus(&cfg.input, &lexicon, cfg.bless)?;
        for f in &report.failures {
            writeln!(stdout, "FAIL {f}").map_err(console)?;
        }
        writeln!(stdout, "{} files, {} failures", report.checked, report.failures.len()).map_err(console)?;
        return match report.failures.first() {
            Some(f) => Err(CliError::Mismatch(f.clone())),
            None => Ok(()),
        };
    }
    let text = read(&cfg.input)?;
    let outs = outputs(cfg, &lexicon, &text)
        .map_err(|source| CliError::Analysis { path: cfg.input.display().to_string(), source })?;
    let stem = cfg.input.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let many = outs.len() > 1;
    for (emit, text) in &outs {
        match &cfg.out {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.display().to_string(), source })?;
                write(&dir.join(format!("{stem}.{}", emit.extension())), text)?;
            }
            None => {
                if many {
                    writeln!(stdout, "== {emit}").map_err(console)?;
                }
                stdout.write_all(text.as_bytes()).map_err(console)?;
            }
        }
    }
    if cfg.mode == Mode::CheckCrossing {
        let (_, g) = crossing_graph(&text, &lexicon, cfg.compat.as_deref())
            .map_err(|source| CliError::Analysis { path: cfg.input.display().to_string(), source })?;
        let n = check_no_crossing(&g).violations.len();
        if n > 0 {
            return Err(CliError::Crossing(n));
        }
    }
    Ok(())
}

/// Parses arguments, runs, and maps the outcome to an exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cfg, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
