//! One-step reductions on group terms, the reduction operators as
//! algebra elements, and the normalizing strategy with trace output.
//!
//! Each operator, applied to a reduction expression `x`, yields the
//! one-step extensions `{x} -> t` where `t` rewrites the concluding
//! term of `x`: reassociation (both directions), cancellation of
//! `u*u^-1` and `u^-1*u` to `1`, deletion of `u*1` and `1*u`, and
//! deletion of relator occurrences.

use super::term::{GroupTerm, Path, Presentation};
use crate::element::{Element, RuleFamily};
use crate::expr::{CanonSet, ProofExpr};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Kind of a one-step rewrite at a position. `AssL` associates leftward
/// (`u*(v*w)` to `(u*v)*w`), `AssR` rightward.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RedexKind {
    AssL,
    AssR,
    Inv,
    Id,
    Relator(usize),
}

/// A rewrite opportunity: the position of the affected subterm and the
/// rule that fires there.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Redex {
    pub position: Path,
    pub kind: RedexKind,
}

fn ass_local(sub: &GroupTerm) -> Vec<(RedexKind, GroupTerm)> {
    let GroupTerm::Mul(l, r) = sub else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if let GroupTerm::Mul(u, v) = &**l {
        out.push((
            RedexKind::AssR,
            GroupTerm::mul((**u).clone(), GroupTerm::mul((**v).clone(), (**r).clone())),
        ));
    }
    if let GroupTerm::Mul(v, w) = &**r {
        out.push((
            RedexKind::AssL,
            GroupTerm::mul(GroupTerm::mul((**l).clone(), (**v).clone()), (**w).clone()),
        ));
    }
    out
}

fn inv_local(sub: &GroupTerm) -> Option<GroupTerm> {
    let GroupTerm::Mul(l, r) = sub else {
        return None;
    };
    if let GroupTerm::Inv(x) = &**r {
        if **x == **l {
            return Some(GroupTerm::Unit);
        }
    }
    if let GroupTerm::Inv(x) = &**l {
        if **x == **r {
            return Some(GroupTerm::Unit);
        }
    }
    None
}

fn id_local(sub: &GroupTerm) -> Option<GroupTerm> {
    let GroupTerm::Mul(l, r) = sub else {
        return None;
    };
    if **r == GroupTerm::Unit {
        return Some((**l).clone());
    }
    if **l == GroupTerm::Unit {
        return Some((**r).clone());
    }
    None
}

fn rewrites_by<F>(term: &GroupTerm, mut local: F) -> Vec<(Redex, GroupTerm)>
where
    F: FnMut(&GroupTerm) -> Vec<(RedexKind, GroupTerm)>,
{
    let mut out = Vec::new();
    for position in term.positions_postorder() {
        let sub = term.subterm_at(&position).expect("enumerated position");
        for (kind, replacement) in local(sub) {
            let rewritten = term
                .replace_at(&position, replacement)
                .expect("enumerated position");
            out.push((
                Redex {
                    position: position.clone(),
                    kind,
                },
                rewritten,
            ));
        }
    }
    out
}

/// All one-step reassociations of `term`, with their positions.
pub fn ass_rewrites(term: &GroupTerm) -> Vec<(Redex, GroupTerm)> {
    rewrites_by(term, ass_local)
}

/// All one-step inverse cancellations of `term`.
pub fn inv_rewrites(term: &GroupTerm) -> Vec<(Redex, GroupTerm)> {
    rewrites_by(term, |sub| {
        inv_local(sub)
            .map(|t| (RedexKind::Inv, t))
            .into_iter()
            .collect()
    })
}

/// All one-step unit deletions of `term`.
pub fn id_rewrites(term: &GroupTerm) -> Vec<(Redex, GroupTerm)> {
    rewrites_by(term, |sub| {
        id_local(sub)
            .map(|t| (RedexKind::Id, t))
            .into_iter()
            .collect()
    })
}

/// All one-step deletions of an occurrence of `relator` in `term`.
pub fn relator_rewrites(
    term: &GroupTerm,
    relator: &GroupTerm,
    index: usize,
) -> Vec<(Redex, GroupTerm)> {
    rewrites_by(term, |sub| {
        if sub == relator {
            vec![(RedexKind::Relator(index), GroupTerm::Unit)]
        } else {
            Vec::new()
        }
    })
}

fn step_exprs(x: &ProofExpr<GroupTerm>, rewrites: Vec<(Redex, GroupTerm)>) -> CanonSet<GroupTerm> {
    rewrites
        .into_iter()
        .map(|(_, t)| ProofExpr::arrow(CanonSet::singleton(x.clone()), ProofExpr::leaf(t)))
        .collect()
}

/// One-step extensions of `x` by reassociation: all `{x} -> t` where
/// `t` reassociates the concluding term of `x` once, either direction.
pub fn ass_apply(x: &ProofExpr<GroupTerm>) -> CanonSet<GroupTerm> {
    step_exprs(x, ass_rewrites(x.root()))
}

/// One-step extensions of `x` by inverse cancellation.
pub fn inv_apply(x: &ProofExpr<GroupTerm>) -> CanonSet<GroupTerm> {
    step_exprs(x, inv_rewrites(x.root()))
}

/// One-step extensions of `x` by unit deletion.
pub fn id_apply(x: &ProofExpr<GroupTerm>) -> CanonSet<GroupTerm> {
    step_exprs(x, id_rewrites(x.root()))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("relator index {index} out of range: presentation has {count} relators")]
pub struct RelatorIndexError {
    pub index: usize,
    pub count: usize,
}

/// One-step extensions of `x` deleting an occurrence of relator `index`.
pub fn relator_apply(
    index: usize,
    presentation: &Presentation,
    x: &ProofExpr<GroupTerm>,
) -> Result<CanonSet<GroupTerm>, RelatorIndexError> {
    let relator = presentation
        .relators()
        .get(index)
        .ok_or(RelatorIndexError {
            index,
            count: presentation.relators().len(),
        })?;
    Ok(step_exprs(x, relator_rewrites(x.root(), relator, index)))
}

enum ReductionLaw {
    Ass,
    Inv,
    Id,
    Relator { index: usize, term: GroupTerm },
}

struct ReductionOp {
    law: ReductionLaw,
    name: String,
}

impl ReductionOp {
    fn rewrites(&self, term: &GroupTerm) -> Vec<(Redex, GroupTerm)> {
        match &self.law {
            ReductionLaw::Ass => ass_rewrites(term),
            ReductionLaw::Inv => inv_rewrites(term),
            ReductionLaw::Id => id_rewrites(term),
            ReductionLaw::Relator {
                index,
                term: relator,
            } => relator_rewrites(term, relator, *index),
        }
    }
}

impl RuleFamily<GroupTerm> for ReductionOp {
    fn name(&self) -> &str {
        &self.name
    }

    fn saturation_arity(&self) -> usize {
        1
    }

    fn contains(&self, _bound: &[CanonSet<GroupTerm>], expr: &ProofExpr<GroupTerm>) -> bool {
        let Some((head, body)) = expr.as_arrow() else {
            return false;
        };
        if head.len() != 1 {
            return false;
        }
        let x = &head.elems()[0];
        let Some((inner_head, conclusion)) = body.as_arrow() else {
            return false;
        };
        if inner_head != head {
            return false;
        }
        let ProofExpr::Leaf(t) = conclusion else {
            return false;
        };
        self.rewrites(x.root()).into_iter().any(|(_, r)| r == *t)
    }

    fn saturate(
        &self,
        _bound: &[CanonSet<GroupTerm>],
        arg: &CanonSet<GroupTerm>,
    ) -> CanonSet<GroupTerm> {
        let mut out = CanonSet::new();
        for x in arg {
            out = out.union(&step_exprs(x, self.rewrites(x.root())));
        }
        out
    }
}

/// The reassociation operator as an algebra element.
pub fn ass_element() -> Element<GroupTerm> {
    Element::from_rule(Arc::new(ReductionOp {
        law: ReductionLaw::Ass,
        name: "ASS".into(),
    }))
}

/// The inverse-cancellation operator as an algebra element.
pub fn inv_element() -> Element<GroupTerm> {
    Element::from_rule(Arc::new(ReductionOp {
        law: ReductionLaw::Inv,
        name: "INV".into(),
    }))
}

/// The unit-deletion operator as an algebra element.
pub fn id_element() -> Element<GroupTerm> {
    Element::from_rule(Arc::new(ReductionOp {
        law: ReductionLaw::Id,
        name: "ID".into(),
    }))
}

/// The deletion operator for relator `index` as an algebra element.
pub fn relator_element(
    presentation: &Presentation,
    index: usize,
) -> Result<Element<GroupTerm>, RelatorIndexError> {
    let term = presentation
        .relators()
        .get(index)
        .cloned()
        .ok_or(RelatorIndexError {
            index,
            count: presentation.relators().len(),
        })?;
    Ok(Element::from_rule(Arc::new(ReductionOp {
        law: ReductionLaw::Relator { index, term },
        name: format!("R{}", index + 1),
    })))
}

/// Label of a normalization step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepLabel {
    Ass,
    Inv,
    Id,
    Relator(usize),
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepLabel::Ass => f.write_str("ASS"),
            StepLabel::Inv => f.write_str("INV"),
            StepLabel::Id => f.write_str("ID"),
            StepLabel::Relator(i) => write!(f, "R{}", i + 1),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReductionStep {
    pub label: StepLabel,
    pub position: Path,
    /// The whole term after this step.
    pub term: GroupTerm,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalizeStatus {
    Normalized,
    BudgetExhausted,
}

/// A linear reduction chain: the initial term and one rewrite per step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction {
    pub initial: GroupTerm,
    pub steps: Vec<ReductionStep>,
    pub status: NormalizeStatus,
}

impl Reduction {
    pub fn final_term(&self) -> &GroupTerm {
        self.steps.last().map_or(&self.initial, |s| &s.term)
    }

    /// The chain as a proof expression: each step wraps the previous
    /// chain as the single premise of an arrow to the new term.
    pub fn expr(&self) -> ProofExpr<GroupTerm> {
        let mut acc = ProofExpr::leaf(self.initial.clone());
        for step in &self.steps {
            acc = ProofExpr::arrow(CanonSet::singleton(acc), ProofExpr::leaf(step.term.clone()));
        }
        acc
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("cannot normalize open term: variable `{0}` present")]
    OpenTerm(String),
}

/// Fully right-associate a term (no `(u*v)*w` subterm remains).
fn right_associated(term: &GroupTerm) -> GroupTerm {
    let mut cur = term.clone();
    while let Some((_, _, next)) = assoc_step(&cur) {
        cur = next;
    }
    cur
}

/// Leftmost-innermost contracting redex: inverse cancellation, unit
/// deletion, or relator deletion, in that priority at each position.
/// Relators are matched in right-associated form, the orientation the
/// strategy itself produces.
fn contracting_step(
    term: &GroupTerm,
    relators: &[GroupTerm],
) -> Option<(Path, StepLabel, GroupTerm)> {
    for position in term.positions_postorder() {
        let sub = term.subterm_at(&position).expect("enumerated position");
        if let Some(t) = inv_local(sub) {
            let whole = term.replace_at(&position, t).expect("enumerated position");
            return Some((position, StepLabel::Inv, whole));
        }
        if let Some(t) = id_local(sub) {
            let whole = term.replace_at(&position, t).expect("enumerated position");
            return Some((position, StepLabel::Id, whole));
        }
        for (i, relator) in relators.iter().enumerate() {
            if sub == relator {
                let whole = term
                    .replace_at(&position, GroupTerm::Unit)
                    .expect("enumerated position");
                return Some((position, StepLabel::Relator(i), whole));
            }
        }
    }
    None
}

/// Leftmost-innermost rightward reassociation.
fn assoc_step(term: &GroupTerm) -> Option<(Path, StepLabel, GroupTerm)> {
    for position in term.positions_postorder() {
        let sub = term.subterm_at(&position).expect("enumerated position");
        if let GroupTerm::Mul(l, r) = sub {
            if let GroupTerm::Mul(u, v) = &**l {
                let rotated =
                    GroupTerm::mul((**u).clone(), GroupTerm::mul((**v).clone(), (**r).clone()));
                let whole = term
                    .replace_at(&position, rotated)
                    .expect("enumerated position");
                return Some((position, StepLabel::Ass, whole));
            }
        }
    }
    None
}

/// Normalize a closed term: contracting steps (INV, ID, relator
/// deletion) are applied leftmost-innermost whenever available,
/// otherwise association is rotated rightward one step at a time.
/// Terminates with a term that has no contracting redex and is fully
/// right-associated, or stops early when the budget runs out.
pub fn alg_normalize(
    presentation: &Presentation,
    term: &GroupTerm,
    budget: usize,
) -> Result<Reduction, NormalizeError> {
    if let Some(var) = term.first_var() {
        return Err(NormalizeError::OpenTerm(var.to_string()));
    }
    let relators: Vec<GroupTerm> = presentation
        .relators()
        .iter()
        .map(right_associated)
        .collect();
    let mut current = term.clone();
    let mut steps = Vec::new();
    let status = loop {
        let next = contracting_step(&current, &relators).or_else(|| assoc_step(&current));
        match next {
            None => break NormalizeStatus::Normalized,
            Some(_) if steps.len() >= budget => break NormalizeStatus::BudgetExhausted,
            Some((position, label, term)) => {
                current = term.clone();
                steps.push(ReductionStep {
                    label,
                    position,
                    term,
                });
            }
        }
    };
    Ok(Reduction {
        initial: term.clone(),
        steps,
        status,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TraceStyle {
    MacLane,
    Tree,
}

/// Render a reduction chain: the `maclane` style emits the abbreviated
/// template `Anfang Th, Sub (..), .., Ende (..)` naming each rule
/// applied; the `tree` style emits the chain as a proof expression.
pub fn trace_render(reduction: &Reduction, style: TraceStyle) -> String {
    match style {
        TraceStyle::Tree => reduction.expr().to_string(),
        TraceStyle::MacLane => {
            let Some((last, rest)) = reduction.steps.split_last() else {
                return "Anfang Th.".to_string();
            };
            let mut out = String::from("Anfang Th");
            for step in rest {
                out.push_str(&format!(", Sub ({})", step.label));
            }
            out.push_str(&format!(", Ende ({})", last.label));
            out
        }
    }
}
