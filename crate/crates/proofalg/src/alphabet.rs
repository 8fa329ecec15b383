//! Alphabets: the atom types that proof expressions are built over.
//!
//! The carrier algebra is parametric in its atoms. The plain [`Name`]
//! alphabet covers generic use; `logic::Formula` and `groups::GroupTerm`
//! instantiate the same carrier for the propositional and group theories.

use std::fmt;
use std::hash::Hash;

/// Error produced while scanning an atom from text.
///
/// `offset` is a byte offset into the slice handed to
/// [`Alphabet::parse_prefix`]; callers translate it to an absolute
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomError {
    pub offset: usize,
    pub message: String,
}

impl AtomError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        AtomError {
            offset,
            message: message.into(),
        }
    }
}

/// An alphabet of atoms with decidable equality and a total order.
///
/// `parse_prefix` scans one atom from the front of the input and reports
/// how many bytes it consumed; the expression parser supplies whatever
/// follows (`,`, `}`, `->`, end of input) and the atom scanner must stop
/// before anything it does not understand.
pub trait Alphabet:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn parse_prefix(input: &str) -> Result<(Self, usize), AtomError>;
}

/// Plain identifier atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Name(String);

impl Name {
    pub fn new(name: impl Into<String>) -> Self {
        Name(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Alphabet for Name {
    fn parse_prefix(input: &str) -> Result<(Self, usize), AtomError> {
        match scan_ident(input) {
            Some(len) => Ok((Name::new(&input[..len]), len)),
            None => Err(AtomError::new(0, "expected identifier")),
        }
    }
}

/// Length in bytes of the identifier at the front of `input`, if any.
/// Identifiers are `[A-Za-z_][A-Za-z0-9_]*`.
pub(crate) fn scan_ident(input: &str) -> Option<usize> {
    let mut chars = input.char_indices();
    match chars.next() {
        Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return None,
    }
    for (i, c) in chars {
        if !(c.is_ascii_alphanumeric() || c == '_') {
            return Some(i);
        }
    }
    Some(input.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scans_identifiers() {
        assert_eq!(scan_ident("abc, d"), Some(3));
        assert_eq!(scan_ident("g1*g2"), Some(2));
        assert_eq!(scan_ident("_x"), Some(2));
        assert_eq!(scan_ident("1abc"), None);
        assert_eq!(scan_ident(""), None);
    }

    #[test]
    fn name_parse_prefix_stops_at_delimiters() {
        let (n, used) = Name::parse_prefix("foo}->bar").unwrap();
        assert_eq!(n.as_str(), "foo");
        assert_eq!(used, 3);
        assert!(Name::parse_prefix("{x}").is_err());
    }
}
