//! Algebra elements beyond finite sets: rule-described infinite sets
//! with staged application, unions, and the closure iteration.
//!
//! Infinite elements (the combinators, the proof constructors, the
//! reduction operators) cannot be stored extensionally; each is a rule
//! family with decidable membership and a computable application step.
//! A family declares a saturation arity: once that many finite
//! arguments have been applied the result is guaranteed finite.
//!
//! Extensional equality of intensional elements is deliberately not
//! provided; compare via membership probes and finite applications.

use crate::alphabet::Alphabet;
use crate::expr::{CanonSet, ProofExpr};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// A named rule family denoting a (usually infinite) set of proof
/// expressions, with decidable membership at every application stage.
pub trait RuleFamily<A: Alphabet>: Send + Sync {
    fn name(&self) -> &str;

    /// Number of finite arguments after which application yields a
    /// finite set.
    fn saturation_arity(&self) -> usize;

    /// Membership of `expr` in the set denoted after the arguments in
    /// `bound` have been applied (`bound.len() < saturation_arity()`).
    fn contains(&self, bound: &[CanonSet<A>], expr: &ProofExpr<A>) -> bool;

    /// The finite application result once the last argument arrives;
    /// called with `bound.len() + 1 == saturation_arity()`.
    fn saturate(&self, bound: &[CanonSet<A>], last: &CanonSet<A>) -> CanonSet<A>;
}

/// A rule family part-way through staged application.
#[derive(Clone)]
pub struct IntElement<A: Alphabet> {
    family: Arc<dyn RuleFamily<A>>,
    bound: Vec<CanonSet<A>>,
}

impl<A: Alphabet> IntElement<A> {
    pub fn family_name(&self) -> &str {
        self.family.name()
    }

    /// How many finite arguments have been applied so far.
    pub fn applied(&self) -> usize {
        self.bound.len()
    }

    pub fn saturation_arity(&self) -> usize {
        self.family.saturation_arity()
    }
}

/// An element of the algebra: an explicit finite set, a rule family in
/// staged application, or a union of elements.
#[derive(Clone)]
pub enum Element<A: Alphabet> {
    Ext(CanonSet<A>),
    Int(IntElement<A>),
    Union(Box<Element<A>>, Box<Element<A>>),
}

impl<A: Alphabet> Element<A> {
    pub fn ext(set: CanonSet<A>) -> Self {
        Element::Ext(set)
    }

    pub fn from_rule(family: Arc<dyn RuleFamily<A>>) -> Self {
        Element::Int(IntElement {
            family,
            bound: Vec::new(),
        })
    }

    /// Apply to a finite set. Extensional elements delegate to set
    /// application; intensional ones step their rule family, saturating
    /// to a finite set once enough arguments have arrived.
    pub fn apply(&self, arg: &CanonSet<A>) -> Element<A> {
        match self {
            Element::Ext(set) => Element::Ext(set.apply(arg)),
            Element::Int(int) => {
                if int.bound.len() + 1 < int.family.saturation_arity() {
                    let mut bound = int.bound.clone();
                    bound.push(arg.clone());
                    Element::Int(IntElement {
                        family: int.family.clone(),
                        bound,
                    })
                } else {
                    Element::Ext(int.family.saturate(&int.bound, arg))
                }
            }
            Element::Union(left, right) => left.apply(arg).union(right.apply(arg)),
        }
    }

    /// Apply to several finite sets in order.
    pub fn apply_all(&self, args: &[CanonSet<A>]) -> Element<A> {
        let mut cur = self.clone();
        for arg in args {
            cur = cur.apply(arg);
        }
        cur
    }

    /// Membership of `expr` in the denoted set.
    pub fn contains(&self, expr: &ProofExpr<A>) -> bool {
        match self {
            Element::Ext(set) => set.contains(expr),
            Element::Int(int) => int.family.contains(&int.bound, expr),
            Element::Union(left, right) => left.contains(expr) || right.contains(expr),
        }
    }

    /// Set union of denotations. Two finite elements merge immediately;
    /// anything else stays a union node over which application and
    /// membership distribute.
    pub fn union(self, other: Element<A>) -> Element<A> {
        match (self, other) {
            (Element::Ext(a), Element::Ext(b)) => Element::Ext(a.union(&b)),
            (left, right) => Element::Union(Box::new(left), Box::new(right)),
        }
    }

    pub fn as_ext(&self) -> Option<&CanonSet<A>> {
        match self {
            Element::Ext(set) => Some(set),
            _ => None,
        }
    }

    pub fn is_ext(&self) -> bool {
        self.as_ext().is_some()
    }

    /// Short name used in diagnostics: the family name for intensional
    /// elements, `set` for finite ones.
    pub fn name_hint(&self) -> String {
        match self {
            Element::Ext(_) => "set".to_string(),
            Element::Int(int) => int.family_name().to_string(),
            Element::Union(left, right) => {
                format!("union({}, {})", left.name_hint(), right.name_hint())
            }
        }
    }

    /// One-line rendering: the set text for finite elements, a
    /// placeholder for infinite ones.
    pub fn describe(&self) -> String {
        match self {
            Element::Ext(set) => set.to_string(),
            Element::Int(int) => format!(
                "<intensional: {} applied {} times>",
                int.family_name(),
                int.applied()
            ),
            Element::Union(left, right) => {
                format!("<union of {} and {}>", left.describe(), right.describe())
            }
        }
    }
}

impl<A: Alphabet> fmt::Display for Element<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Outcome of [`close`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ClosureStatus {
    /// The set stopped growing; `rounds` counts applications performed,
    /// including the one that confirmed the fixpoint.
    Fixpoint { rounds: usize },
    /// The budget ran out before a fixpoint was confirmed.
    BudgetExhausted { rounds: usize },
}

impl ClosureStatus {
    pub fn is_fixpoint(&self) -> bool {
        matches!(self, ClosureStatus::Fixpoint { .. })
    }

    pub fn rounds(&self) -> usize {
        match self {
            ClosureStatus::Fixpoint { rounds } | ClosureStatus::BudgetExhausted { rounds } => {
                *rounds
            }
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CloseError {
    /// The element's application to a finite set stayed intensional, so
    /// iteration cannot proceed (e.g. S applied just once).
    #[error("applying {0} to a finite set does not yield a finite set")]
    NotFinite(String),
}

/// Iterate `X_{i+1} = X_i ∪ F·X_i` until the set stops growing or the
/// budget runs out. Every iterate must be finite.
pub fn close<A: Alphabet>(
    family: &Element<A>,
    start: &CanonSet<A>,
    budget: usize,
) -> Result<(CanonSet<A>, ClosureStatus), CloseError> {
    let mut current = start.clone();
    for round in 1..=budget {
        let stepped = family.apply(&current);
        let delta = stepped
            .as_ext()
            .ok_or_else(|| CloseError::NotFinite(family.name_hint()))?;
        let next = current.union(delta);
        if next == current {
            return Ok((current, ClosureStatus::Fixpoint { rounds: round }));
        }
        current = next;
    }
    Ok((current, ClosureStatus::BudgetExhausted { rounds: budget }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Name;

    fn n(s: &str) -> ProofExpr<Name> {
        ProofExpr::leaf(Name::new(s))
    }

    fn set(elems: Vec<ProofExpr<Name>>) -> CanonSet<Name> {
        CanonSet::from_vec(elems)
    }

    #[test]
    fn ext_apply_delegates_to_sets() {
        let x = Element::ext(set(vec![ProofExpr::arrow(set(vec![n("a")]), n("b"))]));
        let out = x.apply(&set(vec![n("a")]));
        assert_eq!(out.as_ext(), Some(&set(vec![n("b")])));
    }

    #[test]
    fn union_of_finite_sets_is_finite() {
        let u = Element::ext(set(vec![n("a")])).union(Element::ext(set(vec![n("b")])));
        assert_eq!(u.as_ext(), Some(&set(vec![n("a"), n("b")])));
    }

    #[test]
    fn ext_membership() {
        let x = Element::ext(set(vec![n("a")]));
        assert!(x.contains(&n("a")));
        assert!(!x.contains(&n("b")));
    }

    #[test]
    fn close_of_empty_under_inert_rule_is_empty() {
        let f = Element::<Name>::ext(CanonSet::new());
        let (out, status) = close(&f, &CanonSet::new(), 5).unwrap();
        assert!(out.is_empty());
        assert_eq!(status, ClosureStatus::Fixpoint { rounds: 1 });
    }

    #[test]
    fn close_with_zero_budget_reports_exhaustion() {
        let f = Element::ext(CanonSet::new());
        let (out, status) = close(&f, &set(vec![n("a")]), 0).unwrap();
        assert_eq!(out, set(vec![n("a")]));
        assert_eq!(status, ClosureStatus::BudgetExhausted { rounds: 0 });
    }
}
