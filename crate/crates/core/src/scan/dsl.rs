//! Binding language for scan slices.
//!
//! ```text
//! clause := NAME '=' expr
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := NUMBER | 'X' | 'Y' | '-' factor | '(' expr ')'
//! ```
//!
//! Clauses are separated by `;` or newlines; `#` starts a comment that runs
//! to the end of the line. Parameter names `L1..L8`, `T1..T8` and the
//! variables `X`, `Y` are case-insensitive. Error offsets are byte offsets
//! into the original text.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Default for Expr {
    fn default() -> Self {
        Expr::Num(0.0)
    }
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Y => y,
            Expr::Neg(a) => -a.eval(x, y),
            Expr::Add(a, b) => a.eval(x, y) + b.eval(x, y),
            Expr::Sub(a, b) => a.eval(x, y) - b.eval(x, y),
            Expr::Mul(a, b) => a.eval(x, y) * b.eval(x, y),
        }
    }

    /// Coefficients of the expression as a polynomial in X and Y, keyed by
    /// `(power of X, power of Y)`, zero terms dropped.
    pub fn polynomial(&self) -> BTreeMap<(u32, u32), f64> {
        fn prune(mut p: BTreeMap<(u32, u32), f64>) -> BTreeMap<(u32, u32), f64> {
            p.retain(|_, c| *c != 0.0);
            p
        }
        fn combine(
            mut a: BTreeMap<(u32, u32), f64>,
            b: BTreeMap<(u32, u32), f64>,
            sign: f64,
        ) -> BTreeMap<(u32, u32), f64> {
            for (k, c) in b {
                *a.entry(k).or_insert(0.0) += sign * c;
            }
            prune(a)
        }
        match self {
            Expr::Num(v) => prune(BTreeMap::from([((0, 0), *v)])),
            Expr::X => BTreeMap::from([((1, 0), 1.0)]),
            Expr::Y => BTreeMap::from([((0, 1), 1.0)]),
            Expr::Neg(a) => a.polynomial().into_iter().map(|(k, c)| (k, -c)).collect(),
            Expr::Add(a, b) => combine(a.polynomial(), b.polynomial(), 1.0),
            Expr::Sub(a, b) => combine(a.polynomial(), b.polynomial(), -1.0),
            Expr::Mul(a, b) => {
                let (pa, pb) = (a.polynomial(), b.polynomial());
                let mut out = BTreeMap::new();
                for (&(ax, ay), &ca) in &pa {
                    for (&(bx, by), &cb) in &pb {
                        *out.entry((ax + bx, ay + by)).or_insert(0.0) += ca * cb;
                    }
                }
                prune(out)
            }
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.polynomial().is_empty()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::X => f.write_str("X"),
            Expr::Y => f.write_str("Y"),
            Expr::Neg(a) => write!(f, "-{}", Paren(a)),
            Expr::Add(a, b) => write!(f, "{a}+{b}"),
            Expr::Sub(a, b) => match **b {
                Expr::Add(..) | Expr::Sub(..) => write!(f, "{a}-({b})"),
                _ => write!(f, "{a}-{b}"),
            },
            Expr::Mul(a, b) => write!(f, "{}*{}", Paren(a), Paren(b)),
        }
    }
}

/// Parenthesises sums and differences when they appear as factors.
struct Paren<'a>(&'a Expr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Expr::Add(..) | Expr::Sub(..) => write!(f, "({})", self.0),
            e => write!(f, "{e}"),
        }
    }
}

/// A channel parameter addressed by the DSL, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Lambda(usize),
    T(usize),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Lambda(i) => write!(f, "L{i}"),
            Param::T(i) => write!(f, "T{i}"),
        }
    }
}

impl Param {
    fn from_name(name: &str) -> Option<Self> {
        let upper = name.to_ascii_uppercase();
        let (kind, digits) = upper.split_at(1);
        let idx: usize = digits.parse().ok().filter(|i| (1..=8).contains(i))?;
        if digits.len() != 1 {
            return None;
        }
        match kind {
            "L" => Some(Param::Lambda(idx)),
            "T" => Some(Param::T(idx)),
            _ => None,
        }
    }
}

/// Expressions for the sixteen channel parameters; unbound ones are zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bindings {
    pub lambda: [Expr; 8],
    pub t: [Expr; 8],
}

impl Bindings {
    pub fn set(&mut self, p: Param, e: Expr) {
        match p {
            Param::Lambda(i) => self.lambda[i - 1] = e,
            Param::T(i) => self.t[i - 1] = e,
        }
    }

    pub fn get(&self, p: Param) -> &Expr {
        match p {
            Param::Lambda(i) => &self.lambda[i - 1],
            Param::T(i) => &self.t[i - 1],
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> ([f64; 8], [f64; 8]) {
        (
            std::array::from_fn(|i| self.lambda[i].eval(x, y)),
            std::array::from_fn(|i| self.t[i].eval(x, y)),
        )
    }

    pub fn has_translation(&self) -> bool {
        self.t.iter().any(|e| !e.is_identically_zero())
    }

    /// Canonical text, one clause per parameter, `;`-separated.
    pub fn to_text(&self) -> String {
        let lam = (1..=8).map(Param::Lambda);
        let t = (1..=8).map(Param::T);
        lam.chain(t)
            .map(|p| format!("{p}={}", self.get(p)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Extra clauses accepted in spec files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpecClauses {
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
    pub resolution: Option<(usize, usize)>,
    pub method: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Parsed {
    pub bindings: Bindings,
    pub settings: SpecClauses,
    pub warnings: Vec<String>,
}

/// Parses a binding list. Spec-file clauses are rejected as unknown names.
pub fn parse_bindings(text: &str) -> Result<Parsed> {
    Parser::new(text, false).run()
}

/// Parses a spec file: bindings plus `xrange`, `yrange`, `res`, `method`.
pub fn parse_spec_text(text: &str) -> Result<Parsed> {
    Parser::new(text, true).run()
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    allow_settings: bool,
    seen: BTreeMap<String, usize>,
    out: Parsed,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        offset,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, allow_settings: bool) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            allow_settings,
            seen: BTreeMap::new(),
            out: Parsed::default(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    /// Skips blanks and comments, but not newlines.
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                b' ' | b'\t' | b'\r' => self.pos += 1,
                b'#' => {
                    while self.peek().is_some_and(|c| c != b'\n') {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.pos, format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        Some((start, &self.src[start..self.pos]))
    }

    fn run(mut self) -> Result<Parsed> {
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b';' | b'\n') => {
                    self.pos += 1;
                    continue;
                }
                _ => {}
            }
            self.clause()?;
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b';' | b'\n') => self.pos += 1,
                Some(c) => return err(self.pos, format!("unexpected '{}'", c as char)),
            }
        }
        Ok(self.out)
    }

    fn clause(&mut self) -> Result<()> {
        let Some((start, name)) = self.ident() else {
            return err(self.pos, "expected a parameter name");
        };
        let key = name.to_ascii_lowercase();
        if let Some(p) = Param::from_name(name) {
            self.expect(b'=')?;
            let e = self.expr()?;
            self.note_duplicate(&key, start);
            self.out.bindings.set(p, e);
            return Ok(());
        }
        if self.allow_settings {
            match key.as_str() {
                "xrange" | "yrange" => {
                    self.expect(b'=')?;
                    let a = self.signed_number()?;
                    self.expect(b',')?;
                    let b = self.signed_number()?;
                    self.note_duplicate(&key, start);
                    if key == "xrange" {
                        self.out.settings.x_range = Some((a, b));
                    } else {
                        self.out.settings.y_range = Some((a, b));
                    }
                    return Ok(());
                }
                "res" => {
                    self.expect(b'=')?;
                    let nx = self.integer()?;
                    self.expect(b',')?;
                    let ny = self.integer()?;
                    self.note_duplicate(&key, start);
                    self.out.settings.resolution = Some((nx, ny));
                    return Ok(());
                }
                "method" => {
                    self.expect(b'=')?;
                    let Some((_, m)) = self.ident() else {
                        return err(self.pos, "expected a method name");
                    };
                    self.note_duplicate(&key, start);
                    self.out.settings.method = Some(m.to_ascii_lowercase());
                    return Ok(());
                }
                _ => {}
            }
        }
        err(start, format!("unknown parameter '{name}'"))
    }

    fn note_duplicate(&mut self, key: &str, offset: usize) {
        if let Some(prev) = self.seen.insert(key.to_string(), offset) {
            self.out.warnings.push(format!(
                "'{}' at offset {offset} overrides the binding at offset {prev}",
                key.to_ascii_uppercase()
            ));
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(Expr::Num(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let (_, name) = self.ident().expect("alphabetic start");
                match name {
                    "X" | "x" => Ok(Expr::X),
                    "Y" | "y" => Ok(Expr::Y),
                    _ => err(start, format!("unknown variable '{name}'")),
                }
            }
            _ => err(start, "expected a number, X, Y, '-' or '('"),
        }
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return err(start, "expected a number");
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| err(start, "malformed number"))
    }

    fn signed_number(&mut self) -> Result<f64> {
        if self.eat(b'-') {
            Ok(-self.number()?)
        } else {
            self.eat(b'+');
            self.number()
        }
    }

    fn integer(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| err(start, "expected a positive integer"))
    }
}
