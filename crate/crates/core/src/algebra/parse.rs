//! Text grammar for polynomials, germ ideals and arcs.
//!
//! Variables are `t` plus `x1..xn`; the bare aliases `x`, `y`, `z` stand for
//! `x1`, `x2`, `x3`, and `z1..zn` for `x1..xn`. Literals are integers or
//! rationals `p/q`; operators are `+ - * ^` with parentheses. Whitespace is
//! insignificant.

use crate::algebra::arc::Arc;
use crate::algebra::field::{parse_scalar, FieldDesc, FieldElement};
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};

/// Ordered variable names for one parse.
#[derive(Debug, Clone)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new(names: &[&str]) -> VarTable {
        VarTable {
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_names(names: Vec<String>) -> VarTable {
        VarTable { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Infer a table from the identifiers used in `sources`. With `with_t`
    /// the first variable is `t`. The X variables become `x1..xn` where n is
    /// the largest index mentioned.
    pub fn infer(sources: &[&str], with_t: bool) -> Result<VarTable> {
        let mut max_index = 0usize;
        for src in sources {
            for (col, ident) in identifiers(src)? {
                if ident == "t" {
                    if !with_t {
                        return Err(Error::Parse {
                            col,
                            msg: "variable `t` is not allowed here".into(),
                        });
                    }
                    continue;
                }
                let idx = canonical_index(&ident).ok_or_else(|| Error::Parse {
                    col,
                    msg: format!("unknown variable `{ident}`"),
                })?;
                max_index = max_index.max(idx);
            }
        }
        let mut names = Vec::new();
        if with_t {
            names.push("t".to_string());
        }
        for k in 1..=max_index {
            names.push(format!("x{k}"));
        }
        Ok(VarTable { names })
    }

    /// Resolve an identifier, honoring the aliases when the table uses the
    /// canonical `x1..xn` names.
    fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.index_of(name) {
            return Some(i);
        }
        let idx = canonical_index(name)?;
        self.index_of(&format!("x{idx}"))
    }
}

fn canonical_index(name: &str) -> Option<usize> {
    match name {
        "x" => return Some(1),
        "y" => return Some(2),
        "z" => return Some(3),
        _ => {}
    }
    let (head, digits) = name.split_at(1);
    if (head == "x" || head == "z") && !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
    {
        let k: usize = digits.parse().ok()?;
        if k >= 1 {
            return Some(k);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' | '−' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((col, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((col, Tok::Comma));
                i += 1;
            }
            ';' => {
                out.push((col, Tok::Semi));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((col, Tok::Num(bytes[start..i].iter().collect())));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(bytes[start..i].iter().collect())));
            }
            other => {
                return Err(Error::Parse {
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

fn identifiers(src: &str) -> Result<Vec<(usize, String)>> {
    Ok(lex(src)?
        .into_iter()
        .filter_map(|(col, t)| match t {
            Tok::Ident(s) => Some((col, s)),
            _ => None,
        })
        .collect())
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    table: &'a VarTable,
    field: FieldDesc,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or_else(|| self.toks.last().map(|(c, _)| c + 1).unwrap_or(1))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse {
                col: self.col(),
                msg: format!("expected {tok:?}"),
            })
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            col: self.col(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.term()?.neg()
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.parse().map_err(|_| Error::Parse {
                        col,
                        msg: format!("bad exponent `{n}`"),
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse {
                    col,
                    msg: "expected integer exponent".into(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => {
                // Integer or rational literal p/q.
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Num(d)) => {
                            let c = parse_scalar(&format!("{n}/{d}"), self.field)
                                .map_err(|e| Error::Parse { col: dcol, msg: e.to_string() })?;
                            Ok(Polynomial::constant(self.field, self.table.len(), c))
                        }
                        _ => Err(Error::Parse {
                            col: dcol,
                            msg: "expected denominator".into(),
                        }),
                    }
                } else {
                    let c = parse_scalar(&n, self.field)
                        .map_err(|e| Error::Parse { col, msg: e.to_string() })?;
                    Ok(Polynomial::constant(self.field, self.table.len(), c))
                }
            }
            Some(Tok::Ident(name)) => match self.table.resolve(&name) {
                Some(i) => Ok(Polynomial::var(self.field, self.table.len(), i)),
                None => Err(Error::Parse {
                    col,
                    msg: format!("unknown variable `{name}`"),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            other => Err(Error::Parse {
                col,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse a single polynomial over the given variables.
pub fn parse_polynomial(src: &str, table: &VarTable, field: FieldDesc) -> Result<Polynomial> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        table,
        field,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(poly)
}

/// Parse a semicolon-separated list of polynomials.
pub fn parse_polynomial_list(src: &str, table: &VarTable, field: FieldDesc) -> Result<Vec<Polynomial>> {
    src.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_polynomial(s, table, field))
        .collect()
}

/// Parse a parenthesized tuple of univariate polynomials in t into an arc.
/// Constant terms become the arc's base point; polynomial components are
/// taken as exact (the tail beyond the written degree is zero).
pub fn parse_arc(src: &str, field: FieldDesc) -> Result<Arc> {
    let trimmed = src.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or(Error::Parse {
            col: 1,
            msg: "arc must be a parenthesized tuple like (t^3, t^2)".into(),
        })?;
    let table = VarTable::new(&["t"]);
    let comps: Vec<Polynomial> = split_top_level(inner)
        .into_iter()
        .map(|part| parse_polynomial(&part, &table, field))
        .collect::<Result<_>>()?;
    if comps.is_empty() {
        return Err(Error::Parse {
            col: 1,
            msg: "arc needs at least one component".into(),
        });
    }
    let n = comps.len();
    let order = comps
        .iter()
        .filter_map(|c| c.degree())
        .max()
        .unwrap_or(0)
        .max(1) as usize;
    let mut base = vec![field.zero(); n];
    let mut coeffs = vec![vec![field.zero(); n]; order];
    for (j, comp) in comps.iter().enumerate() {
        for (e, c) in comp.terms() {
            let k = e.0[0] as usize;
            if k == 0 {
                base[j] = c.clone();
            } else {
                coeffs[k - 1][j] = c.clone();
            }
        }
    }
    Arc::new(field, n, coeffs)?.with_base(base)
}

fn split_top_level(src: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
            }
            _ => cur.push(c),
        }
    }
    parts.push(cur);
    parts
}

/// Convenience for tests and the CLI: parse coefficient vectors like
/// `1, -2/3, 0`.
pub fn parse_scalar_list(src: &str, field: FieldDesc) -> Result<Vec<FieldElement>> {
    src.split(',')
        .map(|s| parse_scalar(s.trim(), field))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    #[test]
    fn whitespace_insensitive() {
        let t = VarTable::new(&["t", "x1", "x2"]);
        let a = parse_polynomial("x1^2-x2^3", &t, q()).unwrap();
        let b = parse_polynomial("  x1 ^ 2 - x2 ^ 3 ", &t, q()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn aliases_resolve_to_indexed_names() {
        let t = VarTable::new(&["t", "x1", "x2", "x3"]);
        let a = parse_polynomial("x^2 - y*z^2", &t, q()).unwrap();
        let b = parse_polynomial("x1^2 - x2*x3^2", &t, q()).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("z1^2 - z2*z3^2", &t, q()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn rational_literals_and_parens() {
        let t = VarTable::new(&["x"]);
        let a = parse_polynomial("1/2 * (x + 1)^2 - 1/2", &t, q()).unwrap();
        let b = parse_polynomial("1/2*x^2 + x", &t, q()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_column() {
        let t = VarTable::new(&["x"]);
        match parse_polynomial("x + $", &t, q()) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_polynomial("x + w", &t, q()) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn arc_tuple_roundtrip() {
        let arc = parse_arc("(t^3, t^2)", q()).unwrap();
        assert_eq!(arc.n(), 2);
        assert_eq!(arc.order(), 3);
        assert!(arc.is_centered());
        assert!(arc.coeff(3)[0].is_one());
        assert!(arc.coeff(2)[1].is_one());
        // Base points from constant terms.
        let off = parse_arc("(1 + t, 0)", q()).unwrap();
        assert!(!off.is_centered());
    }

    #[test]
    fn infer_tables() {
        let t = VarTable::infer(&["x^2 - y^3"], false).unwrap();
        assert_eq!(t.names(), &["x1".to_string(), "x2".to_string()]);
        let t2 = VarTable::infer(&["x^2", "t^3*z3"], true).unwrap();
        assert_eq!(t2.len(), 4);
        assert!(VarTable::infer(&["t + x"], false).is_err());
    }
}
