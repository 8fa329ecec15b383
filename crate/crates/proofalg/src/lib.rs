//! An algebra of proof expressions.
//!
//! A proof expression is a tree: an atom of an alphabet, or a rule
//! `α -> x` pairing a finite set of premises with a conclusion
//! expression. Duplicate-free, canonically ordered finite sets of
//! expressions combine under a single operation, application:
//!
//! ```text
//! X·Y = { x : some α ⊆ Y with α -> x in X }
//! ```
//!
//! Elements that cannot be stored extensionally (the K and S
//! combinators, modus ponens as a proof constructor, the group-law
//! reduction operators) are rule families with decidable membership and
//! staged application; see [`element`].
//!
//! The alphabet is a parameter. [`logic`] instantiates the carrier with
//! propositional formulas and closes proof sets under modus ponens;
//! [`groups`] instantiates it with group terms and normalizes them
//! through reassociation, cancellation, and relator deletion;
//! [`combinators`] verifies the K/S laws on randomized probes and
//! compiles applicative expressions into elements of the same algebra.
//!
//! Everything is immutable and pure. With the default `parallel`
//! feature, randomized law checking fans trials out with rayon; without
//! it the same code runs sequentially with identical results.

pub mod alphabet;
pub mod combinators;
pub mod element;
pub mod expr;
pub mod groups;
pub mod json;
pub mod logic;
pub mod parse;
pub mod probe;

pub use alphabet::{Alphabet, AtomError, Name};
pub use element::{close, CloseError, ClosureStatus, Element, IntElement, RuleFamily};
pub use expr::{CanonSet, ProofExpr};
pub use parse::{parse_atom, parse_expr, parse_set, ParseError};
