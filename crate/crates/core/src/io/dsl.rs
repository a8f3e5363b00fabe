//! A small expression language for operators.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = atom [ "^" [ "-" ] integer ] ;
//! atom     = integer | "i" | "t" | "d" | "theta" | ident
//!          | "(" expr ")" | matrix ;
//! matrix   = "[" row { "," row } "]" ;
//! row      = "[" expr { "," expr } "]" ;
//! ident    = letter { letter | digit | "_" } ;
//! ```
//!
//! `d` is `∂_t`, `theta` is `t∂_t`, products compose. Divisors, matrix
//! entries and bases raised to negative powers (other than `t`) must be
//! constants.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational};

use crate::algebra::{Gq, Matrix, MatrixPolynomial};
use crate::error::{Error, Result};
use crate::mellin::{EulerOperator, FuchsOperator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative integer literal.
    Number(BigInt),
    /// A named parameter with its bound value.
    Param(String, Gq),
    I,
    T,
    D,
    Theta,
    Matrix(Vec<Vec<Expr>>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

/// A parsed operator, with the source position of each top-level summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorExpression {
    pub expr: Expr,
    pub summands: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBracket => write!(f, "["),
            Tok::RBracket => write!(f, "]"),
            Tok::Comma => write!(f, ","),
        }
    }
}

type Pos = (usize, usize);

fn perr(pos: Pos, message: impl Into<String>) -> Error {
    Error::ParseError {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<(Vec<(Tok, Pos)>, Pos)> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                col += 1;
            }
            let n: BigInt = s
                .parse()
                .map_err(|_| perr(pos, format!("bad integer `{s}`")))?;
            out.push((Tok::Int(n), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars
                .peek()
                .filter(|d| d.is_ascii_alphanumeric() || **d == '_')
            {
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(s), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => return Err(perr(pos, format!("unexpected character `{c}`"))),
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    Ok((out, (line, col)))
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    bindings: &'a BTreeMap<String, Gq>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    /// Error for a missing operand: points at the operator left dangling.
    fn missing(&self, what: &str) -> Error {
        match self.toks.get(self.at) {
            Some((t, p)) => perr(*p, format!("expected {what}, found `{t}`")),
            None => match self.at.checked_sub(1).and_then(|i| self.toks.get(i)) {
                Some((t, p)) => perr(*p, format!("dangling `{t}`: expected {what}")),
                None => perr(self.end, format!("expected {what}")),
            },
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.missing(&format!("`{t}`")))
        }
    }

    fn expr(&mut self, spans: Option<&mut Vec<Pos>>) -> Result<Expr> {
        let mut spans = spans;
        if let Some(s) = spans.as_deref_mut() {
            s.push(self.pos());
        }
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => Tok::Plus,
                Some(Tok::Minus) => Tok::Minus,
                _ => return Ok(lhs),
            };
            self.at += 1;
            if let Some(s) = spans.as_deref_mut() {
                s.push(self.pos());
            }
            let rhs = self.term()?;
            lhs = if op == Tok::Plus {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => Tok::Star,
                Some(Tok::Slash) => Tok::Slash,
                _ => return Ok(lhs),
            };
            self.at += 1;
            let rhs = self.unary()?;
            lhs = if op == Tok::Star {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.at += 1;
        }
        let pos = self.pos();
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                let n = if negative { -n } else { n };
                let k: i64 = n
                    .try_into()
                    .map_err(|_| perr(pos, "exponent out of range"))?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => {
                self.at -= 1;
                Err(self.missing("an integer exponent"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some((tok, pos)) = self.toks.get(self.at).cloned() else {
            return Err(self.missing("an operand"));
        };
        match tok {
            Tok::Int(n) => {
                self.at += 1;
                Ok(Expr::Number(n))
            }
            Tok::Ident(name) => {
                self.at += 1;
                Ok(match name.as_str() {
                    "i" => Expr::I,
                    "t" => Expr::T,
                    "d" => Expr::D,
                    "theta" => Expr::Theta,
                    _ => match self.bindings.get(&name) {
                        Some(v) => Expr::Param(name, v.clone()),
                        None => {
                            return Err(Error::UnboundParameter {
                                name,
                                line: pos.0,
                                column: pos.1,
                            })
                        }
                    },
                })
            }
            Tok::LParen => {
                self.at += 1;
                let e = self.expr(None)?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBracket => {
                self.at += 1;
                let mut rows = Vec::new();
                loop {
                    self.expect(Tok::LBracket)?;
                    let mut row = vec![self.expr(None)?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                        row.push(self.expr(None)?);
                    }
                    self.expect(Tok::RBracket)?;
                    if let Some(first) = rows.first() {
                        let first: &Vec<Expr> = first;
                        if first.len() != row.len() {
                            return Err(perr(pos, "matrix rows differ in length"));
                        }
                    }
                    rows.push(row);
                    if self.peek() == Some(&Tok::Comma) {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                if rows.len() != rows[0].len() {
                    return Err(perr(pos, "matrix literal is not square"));
                }
                Ok(Expr::Matrix(rows))
            }
            _ => Err(self.missing("an operand")),
        }
    }
}

/// Parses `src`, resolving parameter names against `bindings`.
pub fn parse_operator(src: &str, bindings: &BTreeMap<String, Gq>) -> Result<OperatorExpression> {
    let (toks, end) = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end,
        bindings,
    };
    let mut summands = Vec::new();
    let expr = p.expr(Some(&mut summands))?;
    if let Some((t, pos)) = p.toks.get(p.at) {
        return Err(perr(*pos, format!("unexpected `{t}`")));
    }
    Ok(OperatorExpression { expr, summands })
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        _ => 5,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if prec(e) < min {
        format!("({})", unparse(e))
    } else {
        unparse(e)
    }
}

/// Canonical text: single spaces around binary operators, minimal
/// parentheses.
pub fn unparse(e: &Expr) -> String {
    match e {
        Expr::Number(n) => n.to_string(),
        Expr::Param(name, _) => name.clone(),
        Expr::I => "i".into(),
        Expr::T => "t".into(),
        Expr::D => "d".into(),
        Expr::Theta => "theta".into(),
        Expr::Matrix(rows) => {
            let rows: Vec<String> = rows
                .iter()
                .map(|r| format!("[{}]", r.iter().map(unparse).collect::<Vec<_>>().join(", ")))
                .collect();
            format!("[{}]", rows.join(", "))
        }
        Expr::Neg(x) => format!("-{}", wrap(x, 3)),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Expr::Mul(a, b) => format!("{} * {}", wrap(a, 2), wrap(b, 3)),
        Expr::Div(a, b) => format!("{} / {}", wrap(a, 2), wrap(b, 3)),
        Expr::Pow(a, k) => format!("{}^{k}", wrap(a, 5)),
    }
}

impl OperatorExpression {
    pub fn unparse(&self) -> String {
        unparse(&self.expr)
    }

    /// Lowers to Euler form; the size comes from the matrix literals, or
    /// is 1 when there are none.
    pub fn to_euler(&self) -> Result<EulerOperator> {
        let n = matrix_size(&self.expr)?.unwrap_or(1);
        lower(&self.expr, n)
    }

    /// Lowers to Fuchs form; a failure names the offending summand.
    pub fn to_fuchs(&self) -> Result<FuchsOperator> {
        let op = self.to_euler()?;
        FuchsOperator::from_euler(&op).map_err(|e| match e {
            Error::NotFuchsType(msg) => {
                let mu = op.order() as i64;
                let n = op.size();
                let at = summands(&self.expr)
                    .iter()
                    .zip(&self.summands)
                    .find(|(s, _)| {
                        lower(s, n)
                            .ok()
                            .and_then(|o| o.terms().keys().next().copied())
                            .is_some_and(|e| e < -mu)
                    })
                    .map_or(
                        self.summands.first().copied().unwrap_or((1, 1)),
                        |(_, p)| *p,
                    );
                Error::NotFuchsType(format!("{msg} (summand at {}:{})", at.0, at.1))
            }
            other => other,
        })
    }
}

fn summands(e: &Expr) -> Vec<&Expr> {
    match e {
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut v = summands(a);
            v.push(b);
            v
        }
        _ => vec![e],
    }
}

fn matrix_size(e: &Expr) -> Result<Option<usize>> {
    let merge = |a: Option<usize>, b: Option<usize>| match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::DimensionMismatch(format!(
            "matrix literals of sizes {x} and {y}"
        ))),
        (x, y) => Ok(x.or(y)),
    };
    Ok(match e {
        Expr::Matrix(rows) => Some(rows.len()),
        Expr::Neg(x) | Expr::Pow(x, _) => matrix_size(x)?,
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
            merge(matrix_size(a)?, matrix_size(b)?)?
        }
        _ => None,
    })
}

/// Value of a constant scalar subexpression.
fn constant(e: &Expr) -> Option<Gq> {
    Some(match e {
        Expr::Number(n) => Gq::from(BigRational::from_integer(n.clone())),
        Expr::Param(_, v) => v.clone(),
        Expr::I => Gq::i(),
        Expr::Neg(x) => -constant(x)?,
        Expr::Add(a, b) => &constant(a)? + &constant(b)?,
        Expr::Sub(a, b) => &constant(a)? - &constant(b)?,
        Expr::Mul(a, b) => &constant(a)? * &constant(b)?,
        Expr::Div(a, b) => {
            let d = constant(b)?;
            if d.is_zero() {
                return None;
            }
            &constant(a)? / &d
        }
        Expr::Pow(a, k) => {
            let c = constant(a)?;
            if *k >= 0 {
                c.pow(*k as u32)
            } else {
                c.inv()?.pow(k.unsigned_abs() as u32)
            }
        }
        _ => return None,
    })
}

fn invalid(e: &Expr, why: &str) -> Error {
    Error::InvalidInput(format!("`{}`: {why}", unparse(e)))
}

fn lower(e: &Expr, n: usize) -> Result<EulerOperator> {
    if let Some(c) = constant(e) {
        return Ok(EulerOperator::scalar(n, &c));
    }
    Ok(match e {
        Expr::T => EulerOperator::t_pow(n, 1),
        Expr::D => EulerOperator::d_t(n),
        Expr::Theta => EulerOperator::theta(n),
        Expr::Matrix(rows) => {
            let mut m = Vec::new();
            for r in rows {
                let mut row = Vec::new();
                for x in r {
                    row.push(
                        constant(x)
                            .ok_or_else(|| invalid(x, "matrix entries must be constants"))?,
                    );
                }
                m.push(row);
            }
            EulerOperator::monomial(0, MatrixPolynomial::constant(Matrix::from_rows(m)))
        }
        Expr::Neg(x) => lower(x, n)?.neg(),
        Expr::Add(a, b) => lower(a, n)?.add(&lower(b, n)?),
        Expr::Sub(a, b) => lower(a, n)?.sub(&lower(b, n)?),
        Expr::Mul(a, b) => lower(a, n)?.compose(&lower(b, n)?),
        Expr::Div(a, b) => {
            let d = constant(b).ok_or_else(|| invalid(e, "divisor must be a nonzero constant"))?;
            let inv = d.inv().ok_or_else(|| invalid(e, "division by zero"))?;
            lower(a, n)?.scale(&inv)
        }
        Expr::Pow(a, k) if *k >= 0 => lower(a, n)?.pow(*k as u32),
        Expr::Pow(a, k) if **a == Expr::T => EulerOperator::t_pow(n, *k),
        Expr::Pow(..) => return Err(invalid(e, "only t and constants take negative powers")),
        _ => return Err(invalid(e, "division by zero")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<OperatorExpression> {
        parse_operator(s, &BTreeMap::new())
    }

    #[test]
    fn dangling_operator() {
        let e = parse("d +").unwrap_err();
        assert!(
            matches!(
                e,
                Error::ParseError {
                    line: 1,
                    column: 3,
                    ..
                }
            ),
            "{e}"
        );
    }

    #[test]
    fn unbound() {
        let e = parse("d^2 + a*d").unwrap_err();
        assert_eq!(
            e,
            Error::UnboundParameter {
                name: "a".into(),
                line: 1,
                column: 7
            }
        );
    }

    #[test]
    fn canonical_text() {
        let e = parse("d^3+t^-1*d^2").unwrap();
        assert_eq!(e.unparse(), "d^3 + t^-1 * d^2");
        assert_eq!(
            parse("-(a1)").map(|_| ()),
            Err(Error::UnboundParameter {
                name: "a1".into(),
                line: 1,
                column: 3
            })
        );
        assert_eq!(
            parse("-(t - 1) * (2 - d)").unwrap().unparse(),
            "-(t - 1) * (2 - d)"
        );
    }

    #[test]
    fn not_fuchs_location() {
        let e = parse("d + t^-3").unwrap().to_fuchs().unwrap_err();
        match e {
            Error::NotFuchsType(m) => assert!(m.ends_with("(summand at 1:5)"), "{m}"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn theta_and_d_agree() {
        let a = parse("t*d").unwrap().to_fuchs().unwrap();
        let b = parse("theta").unwrap().to_fuchs().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn matrix_literal() {
        let e = parse("[[1, 0], [0, 2]] * d + [[0, 1], [1, 0]] / 2").unwrap();
        let op = e.to_fuchs().unwrap();
        assert_eq!(op.size(), 2);
        assert!(parse("[[1, 0], [0]]").is_err());
        assert!(parse("[[1, 0]] + d").is_err());
    }
}
