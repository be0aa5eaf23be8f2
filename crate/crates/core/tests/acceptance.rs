//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestCaseError, TestRunner};

use dltag::analysis::{analyze, crossing_graph, Analysis};
use dltag::cli::run_corpus;
use dltag::derivation::graph::{check_no_crossing, DependencyGraph};
use dltag::derivation::{build_derivation, clause_sequence};
use dltag::input::parse_discourse;
use dltag::lexicon::{default_lexicon, Props};
use dltag::lf::{beta_reduce, parse_lf, render_term, AnaphoricVar, Arg, EventLabel, Formula, Item, LogicalForm, Term, VarKind};
use dltag::resolver::{answer_bridge, culmination_bridge};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn source(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(format!("{name}.disc"))).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn run(name: &str) -> Result<Analysis, String> {
    analyze(&source(name), &default_lexicon(), None).map_err(|e| format!("{name}: {e}"))
}

fn run_without_compat(name: &str) -> Result<Analysis, String> {
    let text: String = source(name).lines().filter(|l| !l.starts_with("COMPAT")).map(|l| format!("{l}\n")).collect();
    analyze(&text, &default_lexicon(), None).map_err(|e| format!("{name}: {e}"))
}

fn lf_line(a: &Analysis) -> String {
    a.resolved.lf.pretty_print()
}

fn expect(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn expect_lf(name: &str, want: &str) -> Check {
    let a = run(name)?;
    let got = lf_line(&a);
    expect(got == want, || format!("{name}: got {got}"))?;
    let golden = std::fs::read_to_string(corpus_dir().join(format!("{name}.lf"))).map_err(|e| e.to_string())?;
    expect(golden == a.lf_text(), || format!("{name}: differs from its golden"))
}

fn term<'a>(lf: &'a LogicalForm, label: &str) -> Result<&'a Term, String> {
    lf.term_by_label(&EventLabel::new(label)).ok_or_else(|| format!("no term labelled {label}"))
}

/// Label of the unique atom `pred(args)`.
fn label_of(lf: &LogicalForm, pred: &str, args: &[&str]) -> Result<EventLabel, String> {
    let want: Vec<Arg> = args.iter().map(|a| Arg::event(a)).collect();
    lf.items
        .iter()
        .filter_map(Item::as_term)
        .find(|t| t.pred == pred && t.args == want)
        .and_then(|t| t.event_label().cloned())
        .ok_or_else(|| format!("no {pred}({})", args.join(",")))
}

fn has_atom(lf: &LogicalForm, pred: &str, args: &[&str]) -> bool {
    let want: Vec<Arg> = args.iter().map(|a| Arg::event(a)).collect();
    lf.items.iter().filter_map(Item::as_term).any(|t| t.pred == pred && t.args == want)
}

fn trust() -> Check {
    let base = "e1:shouldnt_trust(you,j) ^ e2:never_return(j,borrowed)";
    expect_lf("trust-a", &format!("{base} ^ i1:explanation(e2,e1)"))?;
    expect_lf("trust-b", &format!("{base} ^ i1:elaboration(e2,e1) ^ i2:explanation(e2,e1) ^ defeasible(i2)"))?;
    expect_lf("trust-c", &format!("{base} ^ i1:exemplification(e2,\\X.explanation(X,e1))"))?;
    expect_lf(
        "trust-d",
        &format!("{base} ^ i1:elaboration(e2,e1) ^ i2:exemplification(e2,\\X.explanation(X,e1)) ^ defeasible(i2)"),
    )
}

fn barolo() -> Check {
    expect_lf(
        "barolo",
        "e1:love(j,barolo) ^ e2:order(j,c1) ^ e3:cancel(j,o1) ^ e4:discover(j,e5) ^ e5:broke(j) \
         ^ i1:result(e2,e1) ^ i2:explanation(e4,e3) ^ i3:elaboration(i2,i1) ^ i4:after(e4,e2)",
    )?;
    let a = run("barolo")?;
    let r = &a.resolved.resolutions[0];
    expect(r.surface == "then" && r.antecedent.0 == "T2", || format!("then resolved to {}", r.antecedent.0))?;
    let t2 = a.discourse.clause("T2").ok_or("no T2")?;
    let lex = default_lexicon();
    expect(lex.constraints().admits("culminated-eventuality", &t2.props), || "T2 is not culminated".into())?;
    let t3 = a.discourse.clause("T3").ok_or("no T3")?;
    expect(!lex.constraints().admits("culminated-eventuality", &t3.props), || "T3 would also qualify".into())
}

fn otherwise() -> Check {
    let ticket = run("otherwise-ticket")?;
    let lf = &ticket.resolved.lf;
    expect(has_atom(lf, "if", &["e4", "e3"]) && has_atom(lf, "complement", &["e2", "e4"]), || lf_line(&ticket))?;
    let straight = run("otherwise-straight")?;
    let lf = &straight.resolved.lf;
    expect(has_atom(lf, "if", &["e4", "e3"]) && has_atom(lf, "complement", &["e1", "e4"]), || lf_line(&straight))?;
    for name in ["otherwise-ticket", "otherwise-straight"] {
        let a = run_without_compat(name)?;
        let r = a.resolved.resolutions.first().ok_or("no resolution")?;
        let labels: Vec<String> = r.candidates.iter().map(|c| c.source.to_string()).collect();
        expect(labels.contains(&"e1".into()) && labels.contains(&"e2".into()), || format!("{name}: candidates {labels:?}"))?;
    }
    Ok(())
}

fn case_two() -> Check {
    let a = run("because-otherwise")?;
    let lf = &a.resolved.lf;
    let cond = label_of(lf, "if", &["e4", "e3"])?;
    let explanation = lf
        .items
        .iter()
        .filter_map(Item::as_term)
        .find(|t| t.pred == "explanation")
        .ok_or("no explanation")?;
    let args: Vec<Arg> = explanation.args.clone();
    expect(args.contains(&Arg::event("e2")) && args.contains(&Arg::Event(cond.clone())), || {
        format!("explanation does not relate e2 and {cond}: {}", render_term(explanation))
    })?;
    expect(has_atom(lf, "complement", &["e2", "e4"]), || lf_line(&a))?;

    let a = run("and-otherwise")?;
    let lf = &a.resolved.lf;
    let cond = label_of(lf, "if", &["e4", "e3"])?;
    expect(has_atom(lf, "elaboration", &[cond.as_str(), "e0"]), || format!("no elaboration({cond},e0): {}", lf_line(&a)))
}

fn case_four() -> Check {
    let generic = "(during(X,E) ^ E:discuss(Y,politics)) > ~(X:think_about(Y,fish))";
    let specific = "during(X,e1) > ~(X = e2)";
    for (name, rule) in [("nevertheless-while", generic), ("nevertheless-adjacent", specific)] {
        let a = run(name)?;
        let line = lf_line(&a);
        expect(line.ends_with(&format!(" ^ {rule}")), || format!("{name}: {line}"))?;
        expect(!line.contains("concession"), || format!("{name}: relation left in place"))?;
        let reparsed = parse_lf(&line).map_err(|e| format!("{name}: {e}"))?;
        expect(reparsed.pretty_print() == line, || format!("{name}: does not round-trip"))?;
        let rules = reparsed.items.iter().filter(|i| matches!(i, Item::Rule(r) if r.negated_consequent())).count();
        expect(rules == 1, || format!("{name}: {rules} rules"))?;
    }
    Ok(())
}

fn crossing() -> Check {
    let lex = default_lexicon();
    for name in ["crossed-although", "crossed-paired"] {
        let (_, g) = crossing_graph(&source(name), &lex, None).map_err(|e| e.to_string())?;
        let n = check_no_crossing(&g).violations.len();
        expect(n >= 1, || format!("{name}: no violation"))?;
    }
    for name in ["barolo", "shoezoo", "sickzoo"] {
        let (_, g) = crossing_graph(&source(name), &lex, None).map_err(|e| e.to_string())?;
        let r = check_no_crossing(&g);
        expect(r.violations.is_empty(), || format!("{name}: {} violations", r.violations.len()))?;
        expect(!r.exempt.is_empty(), || format!("{name}: no anaphoric crossing"))?;
        let anaphor = ["then", "instead", "otherwise"];
        expect(r.exempt.iter().all(|(x, _)| anaphor.contains(&x.right.name.as_str())), || format!("{name}: {:?}", r.exempt))?;
    }
    for name in ["uncrossed-although", "uncrossed-paired"] {
        let (_, g) = crossing_graph(&source(name), &lex, None).map_err(|e| e.to_string())?;
        expect(check_no_crossing(&g).is_clean(), || format!("{name}: violation"))?;
    }
    Ok(())
}

fn this_because() -> Check {
    let a = run("this-because-a")?;
    let b = run("this-because-b")?;
    let (la, lb) = (&a.resolved.lf, &b.resolved.lf);
    expect(b.resolved.resolutions[0].chosen.as_str() == "e1", || "DPRO not resolved to e1".into())?;
    expect(term(la, "i1")? == term(lb, "i1")?, || "i1 differs".into())?;
    expect(la.items.iter().all(|i| lb.items.contains(i)), || "variant (a) is not contained in (b)".into())?;
    expect(lb.items.len() == la.items.len() + 1, || lf_line(&b))?;
    expect(has_atom(lb, "elaboration", &["i1", "e1"]), || lf_line(&b))?;

    let n = run("this-because-negated")?;
    let ln = &n.resolved.lf;
    let negated = ln.item_by_label(&EventLabel::new("i1")).ok_or("no i1")?;
    let Item::Formula(Formula::Not { inner, .. }) = negated else {
        return Err(format!("i1 is not negated: {}", lf_line(&n)));
    };
    let Formula::Atom(t) = inner.as_ref() else { return Err("negated formula is not atomic".into()) };
    expect(t.same_content(term(la, "i1")?), || render_term(t))
}

fn properties() -> Check {
    let cfg = Config { cases: 1000, failure_persistence: None, ..Config::default() };

    TestRunner::new(cfg.clone())
        .run(&common::beta_case(), |c| {
            if beta_reduce(&c.abs, &c.arg) == c.expected {
                Ok(())
            } else {
                Err(TestCaseError::fail("beta reduction differs from substitution"))
            }
        })
        .map_err(|e| e.to_string())?;

    let lex = default_lexicon();
    TestRunner::new(cfg.clone())
        .run(&common::disc(), |d| {
            let text = d.to_disc();
            let parsed = parse_discourse(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let tree = build_derivation(&parsed.tokens, &lex).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
            let derived = tree.replay().map_err(|e| TestCaseError::fail(e.to_string()))?;
            if derived.clause_yield() != clause_sequence(&parsed.tokens) {
                return Err(TestCaseError::fail(format!("yield differs\n{text}")));
            }
            if !check_no_crossing(&DependencyGraph::from_derivation(&tree)).is_clean() {
                return Err(TestCaseError::fail(format!("crossing\n{text}")));
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    TestRunner::new(cfg.clone())
        .run(&(1usize..6, 1usize..5, 0usize..5), |(n, vars, pick)| {
            let mut lf = LogicalForm::new();
            for k in 1..=n {
                let e = lf.fresh_label("e");
                lf.push(Term::labelled(e, format!("p{k}"), vec![Arg::Ind("a".into())]));
            }
            for v in 0..vars {
                let i = lf.fresh_label("i");
                lf.push(Term::labelled(i, "after", vec![Arg::event("e1"), Arg::Var(format!("EV{v}"))]));
                lf.declare_var(AnaphoricVar::new(format!("EV{v}"), VarKind::AdverbialAntecedent));
            }
            let out = lf
                .resolve_var(&format!("EV{}", pick % vars), &EventLabel::new(format!("e{n}")))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            if out.unresolved().len() + 1 == lf.unresolved().len() {
                Ok(())
            } else {
                Err(TestCaseError::fail("unresolved count did not drop by one"))
            }
        })
        .map_err(|e| e.to_string())?;

    TestRunner::new(cfg)
        .run(&(1usize..5, proptest::bool::ANY), |(n, culm)| {
            let mut lf = LogicalForm::new();
            for k in 1..=n {
                let e = lf.fresh_label("e");
                lf.push(Term::labelled(e, format!("p{k}"), vec![]));
            }
            let e = EventLabel::new(format!("e{n}"));
            let props: Props = ["process", "interrogative"].iter().map(|s| s.to_string()).collect();
            let bridge = if culm { culmination_bridge } else { answer_bridge };
            let first = bridge(&mut lf, &e, &props).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let items = lf.items.clone();
            let second = bridge(&mut lf, &e, &props).map_err(|e| TestCaseError::fail(e.to_string()))?;
            if first == second && lf.items == items {
                Ok(())
            } else {
                Err(TestCaseError::fail("bridge is not idempotent"))
            }
        })
        .map_err(|e| e.to_string())?;
    Ok(())
}

fn corpus() -> Check {
    let start = Instant::now();
    let report = run_corpus(&corpus_dir(), &default_lexicon(), false).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    expect(report.failures.is_empty(), || report.failures.join("; "))?;
    expect(took < Duration::from_secs(5), || format!("corpus took {took:?}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 trust variants", trust),
        ("2 barolo", barolo),
        ("3 otherwise pair", otherwise),
        ("4 embedding (case 2)", case_two),
        ("5 defeasible rules (case 4)", case_four),
        ("6 crossing discipline", crossing),
        ("7 this-because", this_because),
        ("8 property suites", properties),
        ("- corpus goldens under 5s", corpus),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
