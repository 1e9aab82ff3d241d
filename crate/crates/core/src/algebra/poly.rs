//! Polynomial expressions and sparse polynomials over `F_p`.
//!
//! [`Expr`] is the syntax tree read from presentation files; printing it with
//! `Display` gives the canonical spelling, and parsing that spelling gives the
//! same tree back. [`Polynomial`] is the evaluated form.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::field::PrimeField;
use crate::kernel::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    pub fn parse(text: &str) -> Result<Expr> {
        let chars: Vec<Located> = text
            .chars()
            .enumerate()
            .map(|(i, c)| Located {
                ch: c,
                line: 1,
                column: i + 1,
            })
            .collect();
        parse_located(&chars, (1, text.chars().count() + 1))
    }

    /// Evaluates against an ordered list of variable names.
    pub fn to_polynomial(&self, field: PrimeField, names: &[String]) -> Result<Polynomial> {
        let n = names.len();
        Ok(match self {
            Expr::Int(v) => Polynomial::constant(field, n, field.from_i64((*v % field.p() as u64) as i64)),
            Expr::Var(name) => {
                let i = names
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| Error::domain(format!("unknown variable `{name}`")))?;
                Polynomial::variable(field, n, i)
            }
            Expr::Neg(a) => a.to_polynomial(field, names)?.neg(),
            Expr::Add(a, b) => a
                .to_polynomial(field, names)?
                .add(&b.to_polynomial(field, names)?),
            Expr::Sub(a, b) => a
                .to_polynomial(field, names)?
                .sub(&b.to_polynomial(field, names)?),
            Expr::Mul(a, b) => a
                .to_polynomial(field, names)?
                .mul(&b.to_polynomial(field, names)?),
            Expr::Pow(a, e) => a.to_polynomial(field, names)?.pow(*e),
        })
    }

    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, a.precedence() < p)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                write_child(f, a, a.precedence() < p)?;
                f.write_str(match self {
                    Expr::Add(..) => " + ",
                    Expr::Sub(..) => " - ",
                    _ => "*",
                })?;
                // left-associative: an equal-precedence right operand needs parentheses
                write_child(f, b, b.precedence() <= p)
            }
            Expr::Pow(a, e) => {
                write_child(f, a, a.precedence() <= p)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// A character with its position in the source file (1-based).
#[derive(Clone, Copy, Debug)]
pub(crate) struct Located {
    pub ch: char,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Sym(char),
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(chars: &[Located]) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.ch.is_whitespace() {
            i += 1;
        } else if c.ch.is_ascii_digit() {
            let mut v: u64 = 0;
            while i < chars.len() && chars[i].ch.is_ascii_digit() {
                v = v
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(chars[i].ch.to_digit(10).unwrap() as u64))
                    .ok_or_else(|| err(c.line, c.column, "integer literal too large"))?;
                i += 1;
            }
            out.push((Tok::Int(v), c.line, c.column));
        } else if c.ch.is_ascii_alphabetic() || c.ch == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].ch.is_ascii_alphanumeric() || chars[i].ch == '_') {
                s.push(chars[i].ch);
                i += 1;
            }
            out.push((Tok::Ident(s), c.line, c.column));
        } else if "+-*^()".contains(c.ch) {
            out.push((Tok::Sym(c.ch), c.line, c.column));
            i += 1;
        } else {
            return Err(err(c.line, c.column, format!("unexpected character `{}`", c.ch)));
        }
    }
    Ok(out)
}

pub(crate) fn parse_located(chars: &[Located], end: (usize, usize)) -> Result<Expr> {
    let toks = lex(chars)?;
    let mut p = Parser { toks, pos: 0, end };
    if p.toks.is_empty() {
        return Err(err(end.0, end.1, "expected an expression"));
    }
    let e = p.expr()?;
    if let Some((t, l, c)) = p.toks.get(p.pos) {
        return Err(err(*l, *c, format!("unexpected token {t:?}")));
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.1, t.2))
            .unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if c == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Sym('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            let (l, c) = self.here();
            match self.peek() {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(*e).map_err(|_| err(l, c, "exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(err(l, c, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                let (l2, c2) = self.here();
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(err(l2, c2, "expected `)`")),
                }
            }
            Some(t) => Err(err(l, c, format!("unexpected token {t:?}"))),
            None => Err(err(l, c, "unexpected end of expression")),
        }
    }
}

/// A polynomial over `F_p`: terms sorted by descending degrevlex, nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        if c != 0 {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn variable(field: PrimeField, nvars: usize, i: usize) -> Self {
        Polynomial::monomial(field, Monomial::variable(nvars, i), 1)
    }

    pub fn monomial(field: PrimeField, m: Monomial, c: u32) -> Self {
        let nvars = m.nvars();
        let mut p = Polynomial::zero(field, nvars);
        if c != 0 {
            p.terms.push((m, c));
        }
        p
    }

    pub fn from_terms(field: PrimeField, nvars: usize, terms: Vec<(Monomial, u32)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            field,
            nvars,
            terms: out,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> u32 {
        self.terms
            .iter()
            .find(|t| t.0.is_one())
            .map_or(0, |t| t.1)
    }

    /// Lowest degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).min()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(*c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u32) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.mul(*c, s)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.mul(b), self.field.mul(*ca, *cb)));
            }
        }
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.field, self.nvars, 1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical expression: terms in descending degrevlex order, signed
    /// coefficients in `(-p/2, p/2]`.
    pub fn to_expr(&self, names: &[String]) -> Expr {
        let mut acc: Option<Expr> = None;
        for (m, c) in &self.terms {
            let signed = self.field.to_signed(*c);
            let magnitude = signed.unsigned_abs();
            let mut factors: Vec<Expr> = Vec::new();
            if magnitude != 1 || m.is_one() {
                factors.push(Expr::Int(magnitude));
            }
            for (name, &e) in names.iter().zip(m.exponents()) {
                match e {
                    0 => {}
                    1 => factors.push(Expr::Var(name.clone())),
                    _ => factors.push(Expr::Pow(Box::new(Expr::Var(name.clone())), e as u32)),
                }
            }
            let term = factors
                .into_iter()
                .reduce(|a, b| Expr::Mul(Box::new(a), Box::new(b)))
                .unwrap();
            acc = Some(match acc {
                None if signed < 0 => Expr::Neg(Box::new(term)),
                None => term,
                Some(prev) if signed < 0 => Expr::Sub(Box::new(prev), Box::new(term)),
                Some(prev) => Expr::Add(Box::new(prev), Box::new(term)),
            });
        }
        acc.unwrap_or(Expr::Int(0))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        self.to_expr(names).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        for src in [
            "x^4",
            "x*(y^3 + z^3)",
            "x - (y - z)",
            "-x*y",
            "-(x*y)",
            "(-x)^2",
            "(x^2)^3",
            "x - -y",
            "2*x^3 - 3*y + 1",
        ] {
            let e = Expr::parse(src).unwrap();
            assert_eq!(e.to_string(), src);
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(
            Expr::parse(" x *( y^3+z ^3 )").unwrap().to_string(),
            "x*(y^3 + z^3)"
        );
    }

    #[test]
    fn parse_errors_have_positions() {
        match Expr::parse("x + * y") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        match Expr::parse("x^y") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(Expr::parse("(x").is_err());
        assert!(Expr::parse("x $ y").is_err());
    }

    #[test]
    fn evaluation() {
        let f = PrimeField::new(7).unwrap();
        let n = names(&["x", "y"]);
        let p = Expr::parse("(x + y)^2 - x^2 - y^2")
            .unwrap()
            .to_polynomial(f, &n)
            .unwrap();
        assert_eq!(p.fmt_with(&n), "2*x*y");
        let q = Expr::parse("7*x + 8").unwrap().to_polynomial(f, &n).unwrap();
        assert_eq!(q.constant_term(), 1);
        assert_eq!(q.order(), Some(0));
        assert!(Expr::parse("w").unwrap().to_polynomial(f, &n).is_err());
        let r = Expr::parse("x^3 - y*x").unwrap().to_polynomial(f, &n).unwrap();
        assert_eq!(r.fmt_with(&n), "x^3 - x*y");
        assert_eq!(r.order(), Some(2));
    }
}
