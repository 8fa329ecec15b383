//! Text format for proof expressions and sets.
//!
//! ```text
//! expr := atom | set "->" expr
//! set  := "{" [ expr ("," expr)* ] "}"
//! ```
//!
//! Whitespace between tokens is insignificant; atom syntax comes from
//! the alphabet. A bare set is not an expression, and the body after
//! `->` extends as far right as possible, so `{a}->{b}->c` denotes
//! `{a}->({b}->c)` while `{a}->b->c` is rejected as trailing input.

use crate::alphabet::Alphabet;
use crate::expr::{CanonSet, ProofExpr};
use thiserror::Error;

/// Syntax error with 1-based line and column.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

pub(crate) fn error_at(input: &str, offset: usize, message: impl Into<String>) -> ParseError {
    let (line, column) = line_col(input, offset);
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

pub(crate) fn line_col(input: &str, offset: usize) -> (usize, usize) {
    let clamped = offset.min(input.len());
    let (mut line, mut column) = (1, 1);
    for ch in input[..clamped].chars() {
        if ch == '\n' {
            line += 1;
            column = 1;
        } else {
            column += 1;
        }
    }
    (line, column)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eof(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        error_at(self.src, self.pos, message)
    }
}

/// Parse a single proof expression, requiring the whole input.
pub fn parse_expr<A: Alphabet>(input: &str) -> Result<ProofExpr<A>, ParseError> {
    let mut cur = Cursor::new(input);
    let e = expr(&mut cur)?;
    cur.skip_ws();
    if !cur.eof() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parse a brace-delimited set of proof expressions, requiring the
/// whole input.
pub fn parse_set<A: Alphabet>(input: &str) -> Result<CanonSet<A>, ParseError> {
    let mut cur = Cursor::new(input);
    let s = set(&mut cur)?;
    cur.skip_ws();
    if !cur.eof() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(s)
}

/// Parse a set from the front of `src` starting at byte `offset`,
/// returning the set and the position just past it.
pub(crate) fn parse_set_prefix<A: Alphabet>(
    src: &str,
    offset: usize,
) -> Result<(CanonSet<A>, usize), ParseError> {
    let mut cur = Cursor { src, pos: offset };
    let s = set(&mut cur)?;
    Ok((s, cur.pos))
}

/// Parse a bare atom of the alphabet, requiring the whole input.
pub fn parse_atom<A: Alphabet>(input: &str) -> Result<A, ParseError> {
    let mut cur = Cursor::new(input);
    cur.skip_ws();
    let (atom, used) = A::parse_prefix(cur.rest())
        .map_err(|e| error_at(cur.src, cur.pos + e.offset, e.message))?;
    cur.pos += used;
    cur.skip_ws();
    if !cur.eof() {
        return Err(cur.err("unexpected trailing input"));
    }
    Ok(atom)
}

fn expr<A: Alphabet>(cur: &mut Cursor<'_>) -> Result<ProofExpr<A>, ParseError> {
    cur.skip_ws();
    if cur.peek() == Some('{') {
        let head = set(cur)?;
        cur.skip_ws();
        if !cur.rest().starts_with("->") {
            return Err(cur.err("expected '->' after set"));
        }
        cur.pos += 2;
        let body = expr(cur)?;
        Ok(ProofExpr::arrow(head, body))
    } else if cur.eof() {
        Err(cur.err("expected expression"))
    } else {
        let (atom, used) = A::parse_prefix(cur.rest())
            .map_err(|e| error_at(cur.src, cur.pos + e.offset, e.message))?;
        cur.pos += used;
        Ok(ProofExpr::leaf(atom))
    }
}

fn set<A: Alphabet>(cur: &mut Cursor<'_>) -> Result<CanonSet<A>, ParseError> {
    cur.skip_ws();
    if !cur.eat('{') {
        return Err(cur.err("expected '{'"));
    }
    cur.skip_ws();
    if cur.eat('}') {
        return Ok(CanonSet::new());
    }
    let mut elems = Vec::new();
    loop {
        elems.push(expr(cur)?);
        cur.skip_ws();
        if cur.eat(',') {
            continue;
        }
        if cur.eat('}') {
            break;
        }
        return Err(cur.err("expected ',' or '}'"));
    }
    Ok(CanonSet::from_vec(elems))
}
