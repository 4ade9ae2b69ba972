//! Tokenizer and polynomial expression parser shared by the input language.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
    Str(String),
    Eof,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (l0, c0) = (line, col);
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: l0,
                column: c0,
            });
        } else if c == '"' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j] != '"' && chars[j] != '\n' {
                j += 1;
            }
            if j == chars.len() || chars[j] != '"' {
                return Err(AlgebraError::Parse {
                    line,
                    column: col,
                    message: "unterminated string".into(),
                });
            }
            let s: String = chars[start..j].iter().collect();
            col += j + 1 - i;
            i = j + 1;
            out.push(Token {
                tok: Tok::Str(s),
                line: l0,
                column: c0,
            });
        } else if "+-*/^(),;=:[]".contains(c) {
            i += 1;
            col += 1;
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
        } else {
            return Err(AlgebraError::Parse {
                line,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(toks: &'a [Token]) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Token {
        &self.toks[self.pos.min(self.toks.len() - 1)]
    }

    pub fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = self.peek();
        Err(AlgebraError::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    pub fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    pub fn eat_sym(&mut self, c: char) -> bool {
        if self.at_sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", describe(&self.peek().tok)))
        }
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.at_keyword(kw) {
            self.next();
            Ok(())
        } else {
            self.error(format!("expected `{kw}`, found {}", describe(&self.peek().tok)))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            other => self.error(format!("expected identifier, found {}", describe(&other))),
        }
    }

    pub fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            other => self.error(format!("expected integer, found {}", describe(&other))),
        }
    }

    /// Optionally signed integer.
    pub fn expect_signed_int(&mut self) -> Result<i64> {
        let neg = self.eat_sym('-');
        let n = self.expect_int()?;
        let v = n
            .to_i64()
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("integer {n} out of range")))?;
        Ok(if neg { -v } else { v })
    }
}

pub(crate) fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Eof => "end of input".to_string(),
    }
}

/// Parses one polynomial expression starting at the cursor.
pub(crate) fn parse_expr<F: Field>(cur: &mut Cursor<'_>, ring: &GradedRing<F>) -> Result<Polynomial<F>> {
    let mut neg = false;
    if cur.eat_sym('-') {
        neg = true;
    } else {
        cur.eat_sym('+');
    }
    let mut acc = parse_term(cur, ring)?;
    if neg {
        acc = acc.neg();
    }
    loop {
        if cur.eat_sym('+') {
            acc = &acc + &parse_term(cur, ring)?;
        } else if cur.eat_sym('-') {
            acc = &acc - &parse_term(cur, ring)?;
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term<F: Field>(cur: &mut Cursor<'_>, ring: &GradedRing<F>) -> Result<Polynomial<F>> {
    let mut acc = parse_power(cur, ring)?;
    loop {
        if cur.eat_sym('*') {
            acc = &acc * &parse_power(cur, ring)?;
        } else if cur.at_sym('/') {
            let (line, column) = (cur.peek().line, cur.peek().column);
            cur.next();
            let d = parse_power(cur, ring)?;
            if !d.is_unit() {
                return Err(AlgebraError::Parse {
                    line,
                    column,
                    message: "division only by nonzero constants".into(),
                });
            }
            let inv = ring.field().inv(&d.terms()[0].1);
            acc = acc.scale(&inv);
        } else {
            return Ok(acc);
        }
    }
}

fn parse_power<F: Field>(cur: &mut Cursor<'_>, ring: &GradedRing<F>) -> Result<Polynomial<F>> {
    let base = parse_atom(cur, ring)?;
    if cur.eat_sym('^') {
        let e = cur.expect_int()?;
        let e = e
            .to_u32()
            .filter(|&e| e <= 10_000)
            .ok_or_else(|| AlgebraError::InvalidArgument(format!("exponent {e} too large")))?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn parse_atom<F: Field>(cur: &mut Cursor<'_>, ring: &GradedRing<F>) -> Result<Polynomial<F>> {
    let tok = cur.peek().clone();
    match tok.tok {
        Tok::Int(n) => {
            cur.next();
            let q = BigRational::from_integer(n);
            let c = ring.field().from_rational(&q).map_err(|e| AlgebraError::Parse {
                line: tok.line,
                column: tok.column,
                message: e.to_string(),
            })?;
            Ok(Polynomial::constant(ring, c))
        }
        Tok::Ident(name) => {
            cur.next();
            match ring.variable_index(&name) {
                Some(slot) => Ok(Polynomial::variable(ring, slot)),
                None => Err(AlgebraError::UndeclaredVariable {
                    name,
                    line: tok.line,
                    column: tok.column,
                }),
            }
        }
        Tok::Sym('(') => {
            cur.next();
            let e = parse_expr(cur, ring)?;
            cur.expect_sym(')')?;
            Ok(e)
        }
        Tok::Sym('-') => {
            cur.next();
            Ok(parse_power(cur, ring)?.neg())
        }
        other => cur.error(format!("expected a term, found {}", describe(&other))),
    }
}

/// Parses text such as `3*x1^2*x2 - 1/2*t*x3` over `ring`.
pub fn parse_polynomial<F: Field>(ring: &GradedRing<F>, text: &str) -> Result<Polynomial<F>> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let p = parse_expr(&mut cur, ring)?;
    if !cur.at_eof() {
        return cur.error(format!("unexpected {}", describe(&cur.peek().tok)));
    }
    Ok(p)
}
