//! Random generators shared by the property tests and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;

use dltag::lf::{Arg, EventLabel, Lambda, Term};

/// A lambda body paired with the result expected from applying it,
/// built side by side so that the expectation never goes through the
/// substitution code under test.
#[derive(Debug, Clone)]
pub struct BetaCase {
    pub abs: Lambda,
    pub arg: EventLabel,
    pub expected: Term,
}

#[derive(Debug, Clone)]
enum Shape {
    /// Occurrence of the outer bound variable.
    Hole,
    Fixed(Arg),
    Nested(String, Vec<Shape>),
    /// Inner binder; when it rebinds the outer name, holes below it are
    /// captured and stay variables.
    Binder(String, String, Vec<Shape>),
}

fn fixed_arg() -> impl Strategy<Value = Arg> {
    prop_oneof![
        (1u8..6).prop_map(|n| Arg::event(&format!("e{n}"))),
        (1u8..4).prop_map(|n| Arg::event(&format!("i{n}"))),
        prop::sample::select(vec!["john", "fish", "c1"]).prop_map(|s| Arg::Ind(s.into())),
        prop::sample::select(vec!["Y", "E", "EV"]).prop_map(|s| Arg::Var(s.into())),
    ]
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![Just(Shape::Hole), fixed_arg().prop_map(Shape::Fixed)];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let pred = prop::sample::select(vec!["p", "after", "explanation", "culmination"]);
        prop_oneof![
            (pred.clone(), prop::collection::vec(inner.clone(), 1..3)).prop_map(|(p, a)| Shape::Nested(p.into(), a)),
            (prop::sample::select(vec!["X", "Z"]), pred, prop::collection::vec(inner, 1..3))
                .prop_map(|(b, p, a)| Shape::Binder(b.into(), p.into(), a)),
        ]
    })
}

fn build(s: &Shape, bound: &str, arg: &EventLabel, captured: bool) -> (Arg, Arg) {
    match s {
        Shape::Hole if captured => (Arg::Var(bound.into()), Arg::Var(bound.into())),
        Shape::Hole => (Arg::Var(bound.into()), Arg::Event(arg.clone())),
        Shape::Fixed(a) => (a.clone(), a.clone()),
        Shape::Nested(p, args) => {
            let (l, r): (Vec<Arg>, Vec<Arg>) = args.iter().map(|a| build(a, bound, arg, captured)).unzip();
            (Arg::Term(Box::new(Term::new(p.clone(), l))), Arg::Term(Box::new(Term::new(p.clone(), r))))
        }
        Shape::Binder(b, p, args) => {
            let cap = captured || b == bound;
            let (l, r): (Vec<Arg>, Vec<Arg>) = args.iter().map(|a| build(a, bound, arg, cap)).unzip();
            (
                Arg::Lambda(Box::new(Lambda::new(b.clone(), Term::new(p.clone(), l)))),
                Arg::Lambda(Box::new(Lambda::new(b.clone(), Term::new(p.clone(), r)))),
            )
        }
    }
}

pub fn beta_case() -> impl Strategy<Value = BetaCase> {
    (
        prop::sample::select(vec!["after", "explanation", "result", "contrast"]),
        prop::collection::vec(shape(), 1..4),
        1u8..9,
    )
        .prop_map(|(pred, shapes, n)| {
            let arg = EventLabel::new(format!("e{n}"));
            let (l, r): (Vec<Arg>, Vec<Arg>) = shapes.iter().map(|s| build(s, "X", &arg, false)).unzip();
            BetaCase { abs: Lambda::new("X", Term::new(pred, l)), arg, expected: Term::new(pred, r) }
        })
}

/// Discourse skeletons in the shapes the grammar admits.
#[derive(Debug, Clone)]
pub enum Disc {
    Clause,
    /// `A <mark> B` between sentences.
    Punct(&'static str, Box<Disc>, Box<Disc>),
    /// `A <coord> B` inside a sentence.
    Coord(&'static str, Box<Disc>, Box<Disc>),
    /// `A <subord> B`.
    Mid(&'static str, Box<Disc>, Box<Disc>),
    /// `<subord> A B`.
    Pre(&'static str, Box<Disc>, Box<Disc>),
    /// `<open> A <close> B`.
    Paired(&'static str, &'static str, Box<Disc>, Box<Disc>),
    /// `<adverbial> A`.
    Adverbial(&'static str, Box<Disc>),
}

impl Disc {
    fn level(&self) -> u8 {
        match self {
            Disc::Punct(..) => 3,
            Disc::Coord(..) => 2,
            Disc::Mid(..) => 1,
            _ => 0,
        }
    }

    /// Token records, one per line. Arguments that would otherwise be
    /// re-bracketed by the grammar's precedence are wrapped in a paired
    /// construction.
    pub fn to_disc(&self) -> String {
        let mut out = String::new();
        let mut n = 0;
        self.emit(&mut out, &mut n);
        out
    }

    fn emit(&self, out: &mut String, n: &mut usize) {
        let arg = |d: &Disc, max: u8, out: &mut String, n: &mut usize| {
            if d.level() > max {
                out.push_str("CONN on the one hand\n");
                d.emit(out, n);
                out.push_str("CONN on the other hand\n");
                *n += 1;
                out.push_str(&format!("CLAUSE P{n} | e{n}:q{n}(a)\n"));
            } else {
                d.emit(out, n);
            }
        };
        match self {
            Disc::Clause => {
                *n += 1;
                out.push_str(&format!("CLAUSE T{n} | e{n}:p{n}(a)\n"));
            }
            Disc::Punct(m, a, b) => {
                arg(a, 3, out, n);
                out.push_str(&format!("PUNCT {m}\n"));
                arg(b, 2, out, n);
            }
            Disc::Coord(c, a, b) => {
                arg(a, 2, out, n);
                out.push_str(&format!("CONN {c}\n"));
                arg(b, 1, out, n);
            }
            Disc::Mid(s, a, b) => {
                arg(a, 1, out, n);
                out.push_str(&format!("CONN {s}\n"));
                arg(b, 0, out, n);
            }
            Disc::Pre(s, a, b) => {
                out.push_str(&format!("CONN {s}\n"));
                arg(a, 0, out, n);
                arg(b, 1, out, n);
            }
            Disc::Paired(o, c, a, b) => {
                out.push_str(&format!("CONN {o}\n"));
                a.emit(out, n);
                out.push_str(&format!("CONN {c}\n"));
                arg(b, 2, out, n);
            }
            Disc::Adverbial(s, a) => {
                out.push_str(&format!("CONN {s}\n"));
                arg(a, 0, out, n);
            }
        }
    }
}

pub fn disc() -> impl Strategy<Value = Disc> {
    Just(Disc::Clause).prop_recursive(5, 32, 2, |inner| {
        let pair = (inner.clone(), inner.clone());
        prop_oneof![
            (prop::sample::select(vec![".", ";", "?"]), pair.clone())
                .prop_map(|(m, (a, b))| Disc::Punct(m, Box::new(a), Box::new(b))),
            (prop::sample::select(vec!["so", "but"]), pair.clone())
                .prop_map(|(c, (a, b))| Disc::Coord(c, Box::new(a), Box::new(b))),
            (prop::sample::select(vec!["because", "although", "while", "after"]), pair.clone())
                .prop_map(|(s, (a, b))| Disc::Mid(s, Box::new(a), Box::new(b))),
            (prop::sample::select(vec!["because", "if", "before"]), pair.clone())
                .prop_map(|(s, (a, b))| Disc::Pre(s, Box::new(a), Box::new(b))),
            (prop::sample::select(vec![("on the one hand", "on the other hand"), ("not only", "but also")]), pair)
                .prop_map(|((o, c), (a, b))| Disc::Paired(o, c, Box::new(a), Box::new(b))),
            (prop::sample::select(vec!["then", "instead", "nevertheless"]), inner)
                .prop_map(|(s, a)| Disc::Adverbial(s, Box::new(a))),
        ]
    })
}
