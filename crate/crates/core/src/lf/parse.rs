use thiserror::Error;

use super::{Arg, DefeasibleRule, EventLabel, Formula, Item, Lambda, LogicalForm, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("LF parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    bound: Vec<String>,
    _src: &'a str,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '-'
}

fn is_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && s.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_' || c == '\'')
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, bound: Vec::new(), _src: src }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected identifier");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn classify(&self, name: String) -> Arg {
        if self.bound.contains(&name) || is_var_name(&name) {
            Arg::Var(name)
        } else if EventLabel::is_label_token(&name) {
            Arg::Event(EventLabel::new(name))
        } else {
            Arg::Ind(name)
        }
    }

    fn lf(&mut self) -> Result<Vec<Item>, ParseError> {
        let mut items = Vec::new();
        if self.at_end() {
            return Ok(items);
        }
        loop {
            items.push(self.item()?);
            if self.at_end() {
                return Ok(items);
            }
            self.expect('^')?;
        }
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let f = self.formula()?;
        if self.eat('>') {
            let consequent = self.formula()?;
            Ok(Item::Rule(DefeasibleRule { antecedent: f, consequent }))
        } else {
            Ok(Item::Formula(f))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let mut parts = vec![self.formula()?];
                while self.eat('^') {
                    parts.push(self.formula()?);
                }
                self.expect(')')?;
                Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Formula::And(parts) })
            }
            Some('~') => self.negation(None),
            Some(_) => {
                let name = self.ident()?;
                match self.peek() {
                    Some(':') => {
                        self.pos += 1;
                        let label = Some(self.classify(name));
                        if self.peek() == Some('~') {
                            return self.negation(label);
                        }
                        let pred = self.ident()?;
                        let args = self.args()?;
                        Ok(Formula::Atom(Term { label, pred, args }))
                    }
                    Some('(') => {
                        let args = self.args()?;
                        Ok(Formula::Atom(Term { label: None, pred: name, args }))
                    }
                    Some('=') => {
                        self.pos += 1;
                        let lhs = self.classify(name);
                        let rhs = self.arg()?;
                        Ok(Formula::Eq(lhs, rhs))
                    }
                    _ => self.err("expected `:`, `(` or `=` after identifier"),
                }
            }
            None => self.err("unexpected end of input"),
        }
    }

    fn negation(&mut self, label: Option<Arg>) -> Result<Formula, ParseError> {
        self.expect('~')?;
        self.expect('(')?;
        let inner = self.formula()?;
        self.expect(')')?;
        Ok(Formula::Not { label, inner: Box::new(inner) })
    }

    fn args(&mut self) -> Result<Vec<Arg>, ParseError> {
        self.expect('(')?;
        let mut args = Vec::new();
        if self.eat(')') {
            return Ok(args);
        }
        loop {
            args.push(self.arg()?);
            if self.eat(')') {
                return Ok(args);
            }
            self.expect(',')?;
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        if self.eat('\\') {
            let bound = self.ident()?;
            self.expect('.')?;
            self.bound.push(bound.clone());
            let body = self.term();
            self.bound.pop();
            return Ok(Arg::Lambda(Box::new(Lambda { bound, body: body? })));
        }
        let name = self.ident()?;
        match self.peek() {
            Some('(') => {
                let args = self.args()?;
                Ok(Arg::Term(Box::new(Term { label: None, pred: name, args })))
            }
            Some(':') => {
                self.pos += 1;
                let label = Some(self.classify(name));
                let pred = self.ident()?;
                let args = self.args()?;
                Ok(Arg::Term(Box::new(Term { label, pred, args })))
            }
            _ => Ok(self.classify(name)),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.formula()? {
            Formula::Atom(t) => Ok(t),
            _ => self.err("lambda body must be a predicate term"),
        }
    }
}

pub fn parse_lf_items(text: &str) -> Result<Vec<Item>, ParseError> {
    let mut p = Parser::new(text);
    p.lf()
}

/// Parses LF text. Every labelled item reserves its label.
pub fn parse_lf(text: &str) -> Result<LogicalForm, ParseError> {
    let mut lf = LogicalForm::new();
    for item in parse_lf_items(text)? {
        lf.push(item);
    }
    Ok(lf)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text);
    let f = p.formula()?;
    if !p.at_end() {
        return p.err("trailing input");
    }
    Ok(f)
}
