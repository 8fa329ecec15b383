//! Group terms over generators and variables, and finite presentations.
//!
//! Term syntax: `*` is left associative, `^-1` binds tightest,
//! parentheses are structurally meaningful (`(a*b)*c` and `a*(b*c)` are
//! different terms). `1` is the unit.

use crate::alphabet::{scan_ident, Alphabet, AtomError};
use crate::parse::{parse_atom, ParseError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// A term of the group signature. Association is structurally
/// significant; equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupTerm {
    Unit,
    Gen(String),
    Var(String),
    Inv(Box<GroupTerm>),
    Mul(Box<GroupTerm>, Box<GroupTerm>),
}

impl GroupTerm {
    pub fn unit() -> Self {
        GroupTerm::Unit
    }

    pub fn gen(name: impl Into<String>) -> Self {
        GroupTerm::Gen(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        GroupTerm::Var(name.into())
    }

    pub fn inv(t: GroupTerm) -> Self {
        GroupTerm::Inv(Box::new(t))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(l: GroupTerm, r: GroupTerm) -> Self {
        GroupTerm::Mul(Box::new(l), Box::new(r))
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            GroupTerm::Unit | GroupTerm::Gen(_) | GroupTerm::Var(_) => 1,
            GroupTerm::Inv(t) => 1 + t.size(),
            GroupTerm::Mul(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Some variable occurring in the term, if any.
    pub fn first_var(&self) -> Option<&str> {
        match self {
            GroupTerm::Unit | GroupTerm::Gen(_) => None,
            GroupTerm::Var(v) => Some(v),
            GroupTerm::Inv(t) => t.first_var(),
            GroupTerm::Mul(l, r) => l.first_var().or_else(|| r.first_var()),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.first_var().is_none()
    }

    /// Generator names occurring in the term.
    pub fn generators(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            GroupTerm::Unit | GroupTerm::Var(_) => {}
            GroupTerm::Gen(g) => {
                out.insert(g);
            }
            GroupTerm::Inv(t) => t.collect_generators(out),
            GroupTerm::Mul(l, r) => {
                l.collect_generators(out);
                r.collect_generators(out);
            }
        }
    }

    /// Subterm at `path`, if the path addresses one.
    pub fn subterm_at(&self, path: &[Dir]) -> Option<&GroupTerm> {
        let mut cur = self;
        for dir in path {
            cur = match (cur, dir) {
                (GroupTerm::Mul(l, _), Dir::Left) => l,
                (GroupTerm::Mul(_, r), Dir::Right) => r,
                (GroupTerm::Inv(t), Dir::Inside) => t,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Copy of the term with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[Dir], replacement: GroupTerm) -> Option<GroupTerm> {
        match path.split_first() {
            None => Some(replacement),
            Some((dir, rest)) => match (self, dir) {
                (GroupTerm::Mul(l, r), Dir::Left) => Some(GroupTerm::Mul(
                    Box::new(l.replace_at(rest, replacement)?),
                    r.clone(),
                )),
                (GroupTerm::Mul(l, r), Dir::Right) => Some(GroupTerm::Mul(
                    l.clone(),
                    Box::new(r.replace_at(rest, replacement)?),
                )),
                (GroupTerm::Inv(t), Dir::Inside) => {
                    Some(GroupTerm::Inv(Box::new(t.replace_at(rest, replacement)?)))
                }
                _ => None,
            },
        }
    }

    /// All subterm positions, innermost and leftmost first.
    pub fn positions_postorder(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.walk_postorder(&mut Vec::new(), &mut out);
        out
    }

    fn walk_postorder(&self, prefix: &mut Path, out: &mut Vec<Path>) {
        match self {
            GroupTerm::Unit | GroupTerm::Gen(_) | GroupTerm::Var(_) => {}
            GroupTerm::Inv(t) => {
                prefix.push(Dir::Inside);
                t.walk_postorder(prefix, out);
                prefix.pop();
            }
            GroupTerm::Mul(l, r) => {
                prefix.push(Dir::Left);
                l.walk_postorder(prefix, out);
                prefix.pop();
                prefix.push(Dir::Right);
                r.walk_postorder(prefix, out);
                prefix.pop();
            }
        }
        out.push(prefix.clone());
    }

    /// Turn undeclared generators into variables.
    fn mark_vars(self, declared: &[String]) -> GroupTerm {
        match self {
            GroupTerm::Gen(name) if !declared.contains(&name) => GroupTerm::Var(name),
            GroupTerm::Inv(t) => GroupTerm::inv(t.mark_vars(declared)),
            GroupTerm::Mul(l, r) => GroupTerm::mul(l.mark_vars(declared), r.mark_vars(declared)),
            other => other,
        }
    }

    fn prec(&self) -> u8 {
        match self {
            GroupTerm::Mul(..) => 1,
            GroupTerm::Inv(..) => 2,
            GroupTerm::Unit | GroupTerm::Gen(_) | GroupTerm::Var(_) => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.prec() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            GroupTerm::Unit => f.write_str("1")?,
            GroupTerm::Gen(name) | GroupTerm::Var(name) => f.write_str(name)?,
            GroupTerm::Inv(t) => {
                t.fmt_prec(f, 2)?;
                f.write_str("^-1")?;
            }
            GroupTerm::Mul(l, r) => {
                l.fmt_prec(f, 1)?;
                f.write_str("*")?;
                r.fmt_prec(f, 2)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// A step into a term: left or right factor of a product, or inside an
/// inverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Dir {
    Left,
    Right,
    Inside,
}

pub type Path = Vec<Dir>;

impl fmt::Display for GroupTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Alphabet for GroupTerm {
    /// Identifiers scan as generators; contextual parsing via
    /// [`parse_term_with`] downgrades undeclared ones to variables.
    fn parse_prefix(input: &str) -> Result<(Self, usize), AtomError> {
        let mut scan = TermScan { src: input, pos: 0 };
        let term = scan.mul()?;
        Ok((term, scan.pos))
    }
}

/// Parse a term with every identifier read as a generator.
pub fn parse_term(input: &str) -> Result<GroupTerm, ParseError> {
    parse_atom::<GroupTerm>(input)
}

/// Parse a term in the context of declared generators: identifiers not
/// in `declared` become variables.
pub fn parse_term_with(input: &str, declared: &[String]) -> Result<GroupTerm, ParseError> {
    Ok(parse_term(input)?.mark_vars(declared))
}

struct TermScan<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> TermScan<'a> {
    fn peek_ws(&self) -> (usize, &'a str) {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        (self.pos + (rest.len() - trimmed.len()), trimmed)
    }

    fn mul(&mut self) -> Result<GroupTerm, AtomError> {
        let mut lhs = self.postfix()?;
        loop {
            let (at, ahead) = self.peek_ws();
            if ahead.starts_with('*') {
                self.pos = at + 1;
                lhs = GroupTerm::mul(lhs, self.postfix()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn postfix(&mut self) -> Result<GroupTerm, AtomError> {
        let mut t = self.primary()?;
        loop {
            let (at, ahead) = self.peek_ws();
            if ahead.starts_with('^') {
                if !ahead.starts_with("^-1") {
                    return Err(AtomError::new(at, "expected '^-1'"));
                }
                self.pos = at + 3;
                t = GroupTerm::inv(t);
            } else {
                return Ok(t);
            }
        }
    }

    fn primary(&mut self) -> Result<GroupTerm, AtomError> {
        let (at, ahead) = self.peek_ws();
        if ahead.starts_with('(') {
            self.pos = at + 1;
            let inner = self.mul()?;
            let (close_at, after) = self.peek_ws();
            if !after.starts_with(')') {
                return Err(AtomError::new(close_at, "expected ')'"));
            }
            self.pos = close_at + 1;
            return Ok(inner);
        }
        if ahead.starts_with('1') {
            self.pos = at + 1;
            return Ok(GroupTerm::Unit);
        }
        match scan_ident(ahead) {
            Some(len) => {
                let name = &ahead[..len];
                self.pos = at + len;
                Ok(GroupTerm::gen(name))
            }
            None => Err(AtomError::new(at, "expected term")),
        }
    }
}

/// Generators plus relator terms; relators are rewritten to the unit by
/// the reduction calculus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<GroupTerm>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("invalid generator name `{0}`")]
    BadGeneratorName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("relator {index} contains variable `{var}`; relators must be closed")]
    OpenRelator { index: usize, var: String },
    #[error("relator {index} uses undeclared generator `{generator}`")]
    UndeclaredGenerator { index: usize, generator: String },
    #[error("relator {index} is the unit term")]
    UnitRelator { index: usize },
    #[error("line {line}: expected `gens:` or `rel:`")]
    BadDirective { line: usize },
    #[error("line {line}: duplicate `gens:` line")]
    DuplicateGens { line: usize },
    #[error("line {line}: `rel:` must come after `gens:`")]
    RelBeforeGens { line: usize },
    #[error(transparent)]
    Syntax(#[from] ParseError),
}

impl Presentation {
    pub fn empty() -> Self {
        Presentation {
            generators: Vec::new(),
            relators: Vec::new(),
        }
    }

    pub fn new(
        generators: Vec<String>,
        relators: Vec<GroupTerm>,
    ) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if scan_ident(g) != Some(g.len()) {
                return Err(PresentationError::BadGeneratorName(g.clone()));
            }
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (index, r) in relators.iter().enumerate() {
            if let Some(var) = r.first_var() {
                return Err(PresentationError::OpenRelator {
                    index,
                    var: var.to_string(),
                });
            }
            for g in r.generators() {
                if !seen.contains(g) {
                    return Err(PresentationError::UndeclaredGenerator {
                        index,
                        generator: g.to_string(),
                    });
                }
            }
            // A unit relator would make relator deletion a no-op loop.
            if *r == GroupTerm::Unit {
                return Err(PresentationError::UnitRelator { index });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Parse the line-oriented presentation format: one `gens:` line
    /// with space-separated names, then `rel:` lines with one closed
    /// term each; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut generators: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(names) = line.strip_prefix("gens:") {
                if generators.is_some() {
                    return Err(PresentationError::DuplicateGens { line: line_no });
                }
                generators = Some(names.split_whitespace().map(str::to_string).collect());
            } else if let Some(term_text) = line.strip_prefix("rel:") {
                let declared = generators
                    .as_ref()
                    .ok_or(PresentationError::RelBeforeGens { line: line_no })?;
                let term = parse_term(term_text).map_err(|mut e| {
                    let prefix_chars = raw.chars().count() - term_text.chars().count();
                    e.line = line_no;
                    e.column += prefix_chars;
                    e
                })?;
                for g in term.generators() {
                    if !declared.iter().any(|d| d == g) {
                        return Err(PresentationError::UndeclaredGenerator {
                            index: relators.len(),
                            generator: g.to_string(),
                        });
                    }
                }
                relators.push(term);
            } else {
                return Err(PresentationError::BadDirective { line: line_no });
            }
        }
        Presentation::new(generators.unwrap_or_default(), relators)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupTerm] {
        &self.relators
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupTerm {
        GroupTerm::gen(s)
    }

    #[test]
    fn parses_left_associated_product() {
        let t = parse_term("g1*g2^-1*g1").unwrap();
        let expected = GroupTerm::mul(GroupTerm::mul(g("g1"), GroupTerm::inv(g("g2"))), g("g1"));
        assert_eq!(t, expected);
    }

    #[test]
    fn parens_are_structural() {
        let left = parse_term("(a*b)*c").unwrap();
        let right = parse_term("a*(b*c)").unwrap();
        assert_ne!(left, right);
        assert_eq!(left.to_string(), "a*b*c");
        assert_eq!(right.to_string(), "a*(b*c)");
    }

    #[test]
    fn inverse_binds_tightest() {
        let t = parse_term("s * t^-1").unwrap();
        assert_eq!(t, GroupTerm::mul(g("s"), GroupTerm::inv(g("t"))));
        let u = parse_term("(a*b)^-1").unwrap();
        assert_eq!(u, GroupTerm::inv(GroupTerm::mul(g("a"), g("b"))));
        assert_eq!(u.to_string(), "(a*b)^-1");
        assert_eq!(parse_term("a^-1^-1").unwrap().to_string(), "a^-1^-1");
    }

    #[test]
    fn display_round_trips() {
        for text in ["1", "g1", "(s*t^-1)*t", "a*(b*c)", "1^-1", "(a*b)^-1*c"] {
            let t = parse_term(text).unwrap();
            assert_eq!(parse_term(&t.to_string()).unwrap(), t);
        }
    }

    #[test]
    fn rejects_bad_exponent() {
        let err = parse_term("g^2").unwrap_err();
        assert!(err.message.contains("^-1"));
    }

    #[test]
    fn contextual_parse_marks_variables() {
        let declared = vec!["g1".to_string()];
        let t = parse_term_with("g1*h", &declared).unwrap();
        assert_eq!(t, GroupTerm::mul(g("g1"), GroupTerm::var("h")));
        assert!(!t.is_closed());
    }

    #[test]
    fn replace_at_addresses_subterms() {
        let t = parse_term("(a*b)*c").unwrap();
        assert_eq!(t.subterm_at(&[Dir::Left, Dir::Right]), Some(&g("b")));
        let replaced = t.replace_at(&[Dir::Left], GroupTerm::Unit).unwrap();
        assert_eq!(replaced, parse_term("1*c").unwrap());
        assert!(t.subterm_at(&[Dir::Inside]).is_none());
    }

    #[test]
    fn presentation_file_round_trip() {
        let text = "# cyclic-ish example\ngens: g1 g2\nrel: g1*g2^-1*g1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.generators(), ["g1".to_string(), "g2".to_string()]);
        assert_eq!(p.relators(), [parse_term("g1*g2^-1*g1").unwrap()]);
    }

    #[test]
    fn empty_presentation_text_is_empty() {
        let p = Presentation::parse("# nothing here\n").unwrap();
        assert!(p.generators().is_empty());
        assert!(p.relators().is_empty());
    }

    #[test]
    fn presentation_rejects_undeclared_relator_generator() {
        let err = Presentation::parse("gens: g1\nrel: g1*g2\n").unwrap_err();
        assert!(matches!(
            err,
            PresentationError::UndeclaredGenerator { index: 0, .. }
        ));
    }

    #[test]
    fn presentation_rejects_unit_relator() {
        let err = Presentation::new(vec!["g".into()], vec![GroupTerm::Unit]).unwrap_err();
        assert!(matches!(err, PresentationError::UnitRelator { index: 0 }));
    }

    #[test]
    fn presentation_rejects_open_relator() {
        let err = Presentation::new(
            vec!["g".into()],
            vec![GroupTerm::mul(g("g"), GroupTerm::var("x"))],
        )
        .unwrap_err();
        assert!(matches!(err, PresentationError::OpenRelator { .. }));
    }
}
