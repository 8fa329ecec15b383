//! The propositional instance: formulas as atoms, modus ponens as a
//! formula rule and as a proof constructor, and theory generation by
//! closure.
//!
//! Formula syntax: `~` binds tightest, then `&`, then `|`, then `=>`
//! (right associative). The implication token `=>` is deliberately
//! distinct from the proof arrow `->`.

use crate::alphabet::{scan_ident, Alphabet, AtomError};
use crate::element::{close, CloseError, ClosureStatus, Element, RuleFamily};
use crate::expr::{CanonSet, ProofExpr};
use crate::parse::{parse_atom, ParseError};
use std::fmt;
use std::sync::Arc;

/// A propositional formula.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Var(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Var(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let parens = self.prec() < min;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Var(name) => f.write_str(name)?,
            Formula::Not(x) => {
                f.write_str("~")?;
                x.fmt_prec(f, 4)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, 3)?;
                f.write_str(" & ")?;
                r.fmt_prec(f, 4)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, 2)?;
                f.write_str(" | ")?;
                r.fmt_prec(f, 3)?;
            }
            Formula::Implies(l, r) => {
                l.fmt_prec(f, 2)?;
                f.write_str(" => ")?;
                r.fmt_prec(f, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Alphabet for Formula {
    fn parse_prefix(input: &str) -> Result<(Self, usize), AtomError> {
        let mut scan = FormulaScan { src: input, pos: 0 };
        let formula = scan.implies()?;
        Ok((formula, scan.pos))
    }
}

/// Parse a formula, requiring the whole input.
pub fn parse_formula(input: &str) -> Result<Formula, ParseError> {
    parse_atom::<Formula>(input)
}

struct FormulaScan<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> FormulaScan<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek_ws(&self) -> (usize, &'a str) {
        let rest = self.rest();
        let trimmed = rest.trim_start();
        (self.pos + (rest.len() - trimmed.len()), trimmed)
    }

    fn implies(&mut self) -> Result<Formula, AtomError> {
        let lhs = self.or()?;
        let (at, ahead) = self.peek_ws();
        if ahead.starts_with("=>") {
            self.pos = at + 2;
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, AtomError> {
        let mut lhs = self.and()?;
        loop {
            let (at, ahead) = self.peek_ws();
            if ahead.starts_with('|') {
                self.pos = at + 1;
                lhs = Formula::or(lhs, self.and()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn and(&mut self) -> Result<Formula, AtomError> {
        let mut lhs = self.unary()?;
        loop {
            let (at, ahead) = self.peek_ws();
            if ahead.starts_with('&') {
                self.pos = at + 1;
                lhs = Formula::and(lhs, self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, AtomError> {
        let (at, ahead) = self.peek_ws();
        if ahead.starts_with('~') {
            self.pos = at + 1;
            return Ok(Formula::not(self.unary()?));
        }
        if ahead.starts_with('(') {
            self.pos = at + 1;
            let inner = self.implies()?;
            let (close_at, after) = self.peek_ws();
            if !after.starts_with(')') {
                return Err(AtomError::new(close_at, "expected ')'"));
            }
            self.pos = close_at + 1;
            return Ok(inner);
        }
        match scan_ident(ahead) {
            Some(len) => {
                let name = &ahead[..len];
                self.pos = at + len;
                Ok(Formula::var(name))
            }
            None => Err(AtomError::new(at, "expected formula")),
        }
    }
}

/// The formula rule: all `{a => b, a} -> b`. Applied to a set of
/// formula leaves it yields whatever follows in one step.
struct ModusPonensRule;

impl RuleFamily<Formula> for ModusPonensRule {
    fn name(&self) -> &str {
        "modusponens"
    }

    fn saturation_arity(&self) -> usize {
        1
    }

    fn contains(&self, _bound: &[CanonSet<Formula>], expr: &ProofExpr<Formula>) -> bool {
        let Some((head, body)) = expr.as_arrow() else {
            return false;
        };
        let ProofExpr::Leaf(b) = body else {
            return false;
        };
        if head.len() != 2 {
            return false;
        }
        let (x, y) = (&head.elems()[0], &head.elems()[1]);
        let (ProofExpr::Leaf(fx), ProofExpr::Leaf(fy)) = (x, y) else {
            return false;
        };
        let fits = |major: &Formula, minor: &Formula| match major {
            Formula::Implies(a, c) => **a == *minor && **c == *b,
            _ => false,
        };
        fits(fx, fy) || fits(fy, fx)
    }

    fn saturate(&self, _bound: &[CanonSet<Formula>], arg: &CanonSet<Formula>) -> CanonSet<Formula> {
        let mut out = Vec::new();
        for e in arg {
            if let ProofExpr::Leaf(Formula::Implies(a, b)) = e {
                if arg.contains(&ProofExpr::leaf((**a).clone())) {
                    out.push(ProofExpr::leaf((**b).clone()));
                }
            }
        }
        CanonSet::from_vec(out)
    }
}

/// The proof constructor: all `{x, y} -> ({x, y} -> b)` where x
/// concludes `a => b` and y concludes `a`. Applied to a set of proofs
/// it yields every one-step extension.
struct MpConstructor;

impl MpConstructor {
    fn premises_fit(x: &ProofExpr<Formula>, y: &ProofExpr<Formula>, b: &Formula) -> bool {
        match x.root() {
            Formula::Implies(a, c) => **c == *b && *y.root() == **a,
            _ => false,
        }
    }
}

impl RuleFamily<Formula> for MpConstructor {
    fn name(&self) -> &str {
        "MP"
    }

    fn saturation_arity(&self) -> usize {
        1
    }

    fn contains(&self, _bound: &[CanonSet<Formula>], expr: &ProofExpr<Formula>) -> bool {
        let Some((head, body)) = expr.as_arrow() else {
            return false;
        };
        let Some((inner_head, conclusion)) = body.as_arrow() else {
            return false;
        };
        if inner_head != head || head.len() != 2 {
            return false;
        }
        let ProofExpr::Leaf(b) = conclusion else {
            return false;
        };
        let (x, y) = (&head.elems()[0], &head.elems()[1]);
        Self::premises_fit(x, y, b) || Self::premises_fit(y, x, b)
    }

    fn saturate(&self, _bound: &[CanonSet<Formula>], arg: &CanonSet<Formula>) -> CanonSet<Formula> {
        let mut out = Vec::new();
        for x in arg {
            let Formula::Implies(a, b) = x.root() else {
                continue;
            };
            for y in arg {
                if *y.root() == **a {
                    let head = CanonSet::from_vec(vec![x.clone(), y.clone()]);
                    let step = ProofExpr::arrow(head, ProofExpr::leaf((**b).clone()));
                    out.push(step);
                }
            }
        }
        CanonSet::from_vec(out)
    }
}

/// The formula rule element: applied to formula leaves it produces the
/// one-step consequences.
pub fn modus_ponens_rule() -> Element<Formula> {
    Element::from_rule(Arc::new(ModusPonensRule))
}

/// The proof constructor element: applied to proofs it produces every
/// one-step extension.
pub fn mp_constructor() -> Element<Formula> {
    Element::from_rule(Arc::new(MpConstructor))
}

/// Wrap formulas as leaf expressions.
pub fn lift(formulas: &[Formula]) -> CanonSet<Formula> {
    formulas.iter().cloned().map(ProofExpr::leaf).collect()
}

/// The conclusions of a set of proofs, deduplicated and sorted.
pub fn roots_of(set: &CanonSet<Formula>) -> Vec<Formula> {
    let mut out: Vec<Formula> = set.iter().map(|e| e.root().clone()).collect();
    out.sort();
    out.dedup();
    out
}

/// Close a set of proofs under the proof constructor. The roots of the
/// result are the formulas derivable from the roots of `start` by modus
/// ponens.
///
/// The set of proof expressions itself need not reach a fixpoint within
/// any budget (cyclic implications keep extending proofs of formulas
/// already derived); the roots stabilize regardless, after as many
/// rounds as formula-level forward chaining needs.
pub fn theory(
    start: &CanonSet<Formula>,
    budget: usize,
) -> Result<(CanonSet<Formula>, ClosureStatus), CloseError> {
    close(&mp_constructor(), start, budget)
}

/// Outcome of a proof search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Provability {
    /// A proof concluding with the goal; smallest rank, ties broken by
    /// canonical order.
    Proved(ProofExpr<Formula>),
    /// The closure reached a fixpoint without deriving the goal.
    NotDerivable,
    /// The budget ran out before a fixpoint; nothing can be concluded.
    BudgetExhausted,
}

/// The preferred proof of `goal` within a closed set: smallest rank,
/// ties broken by canonical order.
pub fn best_witness<'a>(
    set: &'a CanonSet<Formula>,
    goal: &Formula,
) -> Option<&'a ProofExpr<Formula>> {
    set.iter()
        .filter(|e| e.root() == goal)
        .min_by(|a, b| a.rank().cmp(&b.rank()).then_with(|| a.cmp(b)))
}

/// Search for a proof of `goal` from `axioms` within `budget` closure
/// rounds.
pub fn prove(axioms: &[Formula], goal: &Formula, budget: usize) -> Result<Provability, CloseError> {
    let (set, status) = theory(&lift(axioms), budget)?;
    match best_witness(&set, goal) {
        Some(w) => Ok(Provability::Proved(w.clone())),
        None if status.is_fixpoint() => Ok(Provability::NotDerivable),
        None => Ok(Provability::BudgetExhausted),
    }
}

/// Structural soundness of a proof: every arrow node must be a modus
/// ponens step `{x, y} -> b` with x concluding `a => b` and y
/// concluding `a`, recursively.
pub fn is_sound_mp_proof(expr: &ProofExpr<Formula>) -> bool {
    match expr {
        ProofExpr::Leaf(_) => true,
        ProofExpr::Arrow(head, body) => {
            let ProofExpr::Leaf(b) = &**body else {
                return false;
            };
            if head.len() != 2 {
                return false;
            }
            let (x, y) = (&head.elems()[0], &head.elems()[1]);
            let step_ok =
                MpConstructor::premises_fit(x, y, b) || MpConstructor::premises_fit(y, x, b);
            step_ok && head.iter().all(is_sound_mp_proof)
        }
    }
}
