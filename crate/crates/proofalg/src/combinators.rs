//! K and S as explicit rule families, an applicative-expression
//! compiler, and randomized law checking.
//!
//! K is the set of all `{y} -> ({} -> y)`. S is the set of all
//! `{τ -> ({r1..rn} -> s)} -> ({σ1->r1, .., σn->rn} -> (σ -> s))` with
//! `σ = τ ∪ σ1 ∪ .. ∪ σn` finite and `n >= 0`; repeated premise bodies
//! are allowed, the head collapses as a set. Two finite applications
//! saturate S, one saturates K.
//!
//! The compiler turns an applicative expression `φ(X1, .., Xn)` into an
//! element `[phi]` by iterated abstraction: abstraction of a body over
//! a parameter is the set of all `α -> m` where `m` evaluates from the
//! body with the parameter bound to the finite set `α`. Application
//! enumerates the subsets of the actual arguments on demand, so the
//! staged result is a union of evaluations over subset tuples; direct
//! evaluation stays available as the independent oracle.

use crate::alphabet::{scan_ident, Alphabet, Name};
use crate::element::{Element, RuleFamily};
use crate::expr::{subsets, CanonSet, ProofExpr};
use crate::parse::{error_at, parse_set_prefix, ParseError};
use crate::probe::{gen_set, map_trials, map_trials_seq, trial_rng, UniverseParams};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// An applicative expression over parameters `X1..Xn` and constant
/// sets, applied by juxtaposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AppExpr<A> {
    arity: usize,
    body: AppNode<A>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AppNode<A> {
    Param(usize),
    Const(CanonSet<A>),
    App(Box<AppNode<A>>, Box<AppNode<A>>),
}

impl<A: Alphabet> AppNode<A> {
    pub fn param(index: usize) -> Self {
        AppNode::Param(index)
    }

    pub fn constant(set: CanonSet<A>) -> Self {
        AppNode::Const(set)
    }

    pub fn app(f: AppNode<A>, arg: AppNode<A>) -> Self {
        AppNode::App(Box::new(f), Box::new(arg))
    }

    fn max_param(&self) -> Option<usize> {
        match self {
            AppNode::Param(i) => Some(*i),
            AppNode::Const(_) => None,
            AppNode::App(f, a) => f.max_param().max(a.max_param()),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, arg_position: bool) -> fmt::Result {
        match self {
            AppNode::Param(i) => write!(f, "X{}", i + 1),
            AppNode::Const(set) => write!(f, "{set}"),
            AppNode::App(fun, arg) => {
                if arg_position {
                    f.write_str("(")?;
                }
                fun.fmt_prec(f, false)?;
                f.write_str(" ")?;
                arg.fmt_prec(f, true)?;
                if arg_position {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl<A: Alphabet> fmt::Display for AppNode<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AppExprError {
    #[error("parameter X{} used but arity is {arity}", index + 1)]
    ParamOutOfRange { index: usize, arity: usize },
}

impl<A: Alphabet> AppExpr<A> {
    pub fn new(arity: usize, body: AppNode<A>) -> Result<Self, AppExprError> {
        if let Some(max) = body.max_param() {
            if max >= arity {
                return Err(AppExprError::ParamOutOfRange { index: max, arity });
            }
        }
        Ok(AppExpr { arity, body })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &AppNode<A> {
        &self.body
    }
}

impl<A: Alphabet> fmt::Display for AppExpr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("arity mismatch: expression takes {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Direct recursive evaluation: parameters look up their argument,
/// application nodes use finite-set application. This is the oracle the
/// compiled element is checked against.
pub fn eval<A: Alphabet>(phi: &AppExpr<A>, args: &[CanonSet<A>]) -> Result<CanonSet<A>, EvalError> {
    if args.len() != phi.arity {
        return Err(EvalError::ArityMismatch {
            expected: phi.arity,
            got: args.len(),
        });
    }
    Ok(eval_node(&phi.body, args))
}

fn eval_node<A: Alphabet>(node: &AppNode<A>, args: &[CanonSet<A>]) -> CanonSet<A> {
    match node {
        AppNode::Param(i) => args[*i].clone(),
        AppNode::Const(set) => set.clone(),
        AppNode::App(f, a) => eval_node(f, args).apply(&eval_node(a, args)),
    }
}

/// Parse the applicative surface syntax: parameters `X1..Xn`,
/// juxtaposition (left associative), parentheses, and constant sets in
/// braces, e.g. `(X1 X3) (X2 X3)`.
pub fn parse_app_expr(input: &str, arity: usize) -> Result<AppExpr<Name>, ParseError> {
    let mut pos = 0;
    let node = parse_app_node(input, &mut pos, arity)?;
    skip_ws(input, &mut pos);
    if pos < input.len() {
        return Err(error_at(input, pos, "unexpected trailing input"));
    }
    AppExpr::new(arity, node).map_err(|e| error_at(input, 0, e.to_string()))
}

fn skip_ws(src: &str, pos: &mut usize) {
    let rest = &src[*pos..];
    *pos = src.len() - rest.trim_start().len();
}

fn parse_app_node(src: &str, pos: &mut usize, arity: usize) -> Result<AppNode<Name>, ParseError> {
    let mut acc: Option<AppNode<Name>> = None;
    loop {
        skip_ws(src, pos);
        let rest = &src[*pos..];
        let primary = if rest.is_empty() || rest.starts_with(')') {
            break;
        } else if rest.starts_with('(') {
            *pos += 1;
            let inner = parse_app_node(src, pos, arity)?;
            skip_ws(src, pos);
            if !src[*pos..].starts_with(')') {
                return Err(error_at(src, *pos, "expected ')'"));
            }
            *pos += 1;
            inner
        } else if rest.starts_with('{') {
            let (set, next) = parse_set_prefix::<Name>(src, *pos)?;
            *pos = next;
            AppNode::Const(set)
        } else if let Some(len) = scan_ident(rest) {
            let name = &rest[..len];
            let at = *pos;
            *pos += len;
            let index = name
                .strip_prefix('X')
                .and_then(|digits| {
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        None
                    } else {
                        digits.parse::<usize>().ok()
                    }
                })
                .filter(|&n| n >= 1)
                .ok_or_else(|| {
                    error_at(
                        src,
                        at,
                        format!("expected parameter X1..X{arity}, '(' or '{{'"),
                    )
                })?;
            if index > arity {
                return Err(error_at(
                    src,
                    at,
                    format!("parameter {name} exceeds arity {arity}"),
                ));
            }
            AppNode::Param(index - 1)
        } else {
            return Err(error_at(src, *pos, "expected parameter, '(' or '{'"));
        };
        acc = Some(match acc {
            None => primary,
            Some(f) => AppNode::app(f, primary),
        });
    }
    acc.ok_or_else(|| error_at(src, *pos, "expected expression"))
}

struct KFamily;

impl<A: Alphabet> RuleFamily<A> for KFamily {
    fn name(&self) -> &str {
        "K"
    }

    fn saturation_arity(&self) -> usize {
        1
    }

    fn contains(&self, _bound: &[CanonSet<A>], expr: &ProofExpr<A>) -> bool {
        let Some((head, body)) = expr.as_arrow() else {
            return false;
        };
        if head.len() != 1 {
            return false;
        }
        let Some((inner_head, y)) = body.as_arrow() else {
            return false;
        };
        inner_head.is_empty() && head.elems()[0] == *y
    }

    fn saturate(&self, _bound: &[CanonSet<A>], arg: &CanonSet<A>) -> CanonSet<A> {
        arg.iter()
            .map(|y| ProofExpr::arrow(CanonSet::new(), y.clone()))
            .collect()
    }
}

struct SFamily;

/// Decomposed `H -> (σ -> s)` shape: bodies(H), union of heads(H), σ, s.
type StageOneShape<'a, A> = (CanonSet<A>, CanonSet<A>, &'a CanonSet<A>, &'a ProofExpr<A>);

impl SFamily {
    /// Decompose a candidate `H -> (σ -> s)` stage-one member shape;
    /// every element of `H` must be an arrow.
    fn stage_one_shape<A: Alphabet>(expr: &ProofExpr<A>) -> Option<StageOneShape<'_, A>> {
        let (premises, body) = expr.as_arrow()?;
        let (sigma, s) = body.as_arrow()?;
        let mut bodies = Vec::new();
        let mut heads = CanonSet::new();
        for p in premises {
            let (h, b) = p.as_arrow()?;
            bodies.push(b.clone());
            heads = heads.union(h);
        }
        Some((CanonSet::from_vec(bodies), heads, sigma, s))
    }
}

impl<A: Alphabet> RuleFamily<A> for SFamily {
    fn name(&self) -> &str {
        "S"
    }

    fn saturation_arity(&self) -> usize {
        2
    }

    fn contains(&self, bound: &[CanonSet<A>], expr: &ProofExpr<A>) -> bool {
        match bound {
            [] => {
                // {τ -> (ρ -> s)} -> (H -> (σ -> s)) with bodies(H) = ρ
                // and σ = τ ∪ heads(H).
                let Some((outer, body)) = expr.as_arrow() else {
                    return false;
                };
                if outer.len() != 1 {
                    return false;
                }
                let Some((tau, inner)) = outer.elems()[0].as_arrow() else {
                    return false;
                };
                let Some((rho, s)) = inner.as_arrow() else {
                    return false;
                };
                let Some((bodies, heads, sigma, s2)) = Self::stage_one_shape(body) else {
                    return false;
                };
                bodies == *rho && s2 == s && *sigma == tau.union(&heads)
            }
            [x_set] => {
                let Some((bodies, heads, sigma, s)) = Self::stage_one_shape(expr) else {
                    return false;
                };
                x_set.iter().any(|x| {
                    let Some((tau, inner)) = x.as_arrow() else {
                        return false;
                    };
                    let Some((rho, s2)) = inner.as_arrow() else {
                        return false;
                    };
                    *rho == bodies && s2 == s && *sigma == tau.union(&heads)
                })
            }
            _ => false,
        }
    }

    fn saturate(&self, bound: &[CanonSet<A>], arg: &CanonSet<A>) -> CanonSet<A> {
        let x_set = &bound[0];
        let mut out = Vec::new();
        for x in x_set {
            let Some((tau, inner)) = x.as_arrow() else {
                continue;
            };
            let Some((rho, s)) = inner.as_arrow() else {
                continue;
            };
            if rho.is_empty() {
                out.push(ProofExpr::arrow(tau.clone(), s.clone()));
                continue;
            }
            // Candidate premise arrows of `arg` per required body.
            let mut candidates: Vec<Vec<&ProofExpr<A>>> = Vec::with_capacity(rho.len());
            let mut complete = true;
            for r in rho {
                let c: Vec<&ProofExpr<A>> = arg
                    .iter()
                    .filter(|y| matches!(y.as_arrow(), Some((_, b)) if b == r))
                    .collect();
                if c.is_empty() {
                    complete = false;
                    break;
                }
                candidates.push(c);
            }
            if complete {
                collect_s_results(&candidates, 0, tau.clone(), s, &mut out);
            }
        }
        CanonSet::from_vec(out)
    }
}

/// For each required body choose a nonempty subset of its candidate
/// premise arrows; every choice contributes `σ -> s` with σ the union
/// of τ and the chosen heads.
fn collect_s_results<A: Alphabet>(
    candidates: &[Vec<&ProofExpr<A>>],
    index: usize,
    sigma: CanonSet<A>,
    s: &ProofExpr<A>,
    out: &mut Vec<ProofExpr<A>>,
) {
    if index == candidates.len() {
        out.push(ProofExpr::arrow(sigma, s.clone()));
        return;
    }
    let list = &candidates[index];
    assert!(
        list.len() < 24,
        "premise-subset enumeration over {} candidates",
        list.len()
    );
    for mask in 1u32..(1u32 << list.len()) {
        let mut next = sigma.clone();
        for (j, premise) in list.iter().enumerate() {
            if mask >> j & 1 == 1 {
                let (head, _) = premise.as_arrow().expect("candidates are arrows");
                next = next.union(head);
            }
        }
        collect_s_results(candidates, index + 1, next, s, out);
    }
}

/// The K combinator: `K·X·Y = X` for all finite X, Y.
pub fn k_element<A: Alphabet>() -> Element<A> {
    Element::from_rule(Arc::new(KFamily))
}

/// The S combinator: `S·X·Y·Z = (X·Z)·(Y·Z)` for all finite X, Y, Z.
pub fn s_element<A: Alphabet>() -> Element<A> {
    Element::from_rule(Arc::new(SFamily))
}

struct CompiledFamily<A: Alphabet> {
    phi: AppExpr<A>,
}

impl<A: Alphabet> CompiledFamily<A> {
    /// Membership under an exact environment for the remaining
    /// parameters: peel one arrow per parameter, then check the fully
    /// bound evaluation.
    fn member_with_env(&self, env: &mut Vec<CanonSet<A>>, expr: &ProofExpr<A>) -> bool {
        if env.len() == self.phi.arity() {
            return eval(&self.phi, env)
                .expect("env matches arity")
                .contains(expr);
        }
        let Some((head, body)) = expr.as_arrow() else {
            return false;
        };
        env.push(head.clone());
        let ok = self.member_with_env(env, body);
        env.pop();
        ok
    }

    fn member_over_subsets(
        &self,
        bound: &[CanonSet<A>],
        env: &mut Vec<CanonSet<A>>,
        expr: &ProofExpr<A>,
    ) -> bool {
        if env.len() == bound.len() {
            return self.member_with_env(env, expr);
        }
        for alpha in subsets(&bound[env.len()]) {
            env.push(alpha);
            let ok = self.member_over_subsets(bound, env, expr);
            env.pop();
            if ok {
                return true;
            }
        }
        false
    }

    fn union_over_subsets(
        &self,
        args: &[&CanonSet<A>],
        env: &mut Vec<CanonSet<A>>,
        out: &mut Vec<ProofExpr<A>>,
    ) {
        if env.len() == args.len() {
            let value = eval(&self.phi, env).expect("env matches arity");
            out.extend(value.iter().cloned());
            return;
        }
        for alpha in subsets(args[env.len()]) {
            env.push(alpha);
            self.union_over_subsets(args, env, out);
            env.pop();
        }
    }
}

impl<A: Alphabet> RuleFamily<A> for CompiledFamily<A> {
    fn name(&self) -> &str {
        "phi"
    }

    fn saturation_arity(&self) -> usize {
        self.phi.arity()
    }

    fn contains(&self, bound: &[CanonSet<A>], expr: &ProofExpr<A>) -> bool {
        self.member_over_subsets(bound, &mut Vec::new(), expr)
    }

    fn saturate(&self, bound: &[CanonSet<A>], last: &CanonSet<A>) -> CanonSet<A> {
        let mut args: Vec<&CanonSet<A>> = bound.iter().collect();
        args.push(last);
        let mut out = Vec::new();
        self.union_over_subsets(&args, &mut Vec::new(), &mut out);
        CanonSet::from_vec(out)
    }
}

/// Compile an applicative expression into an element whose staged
/// application to `arity` finite sets equals direct evaluation.
pub fn compile<A: Alphabet>(phi: AppExpr<A>) -> Element<A> {
    if phi.arity() == 0 {
        let value = eval(&phi, &[]).expect("nullary");
        return Element::ext(value);
    }
    Element::from_rule(Arc::new(CompiledFamily { phi }))
}

/// A law to probe randomly.
#[derive(Clone, Debug)]
pub enum Law {
    K,
    S,
    Compiled(AppExpr<Name>),
}

impl Law {
    pub fn label(&self) -> String {
        match self {
            Law::K => "K".to_string(),
            Law::S => "S".to_string(),
            Law::Compiled(phi) => format!("compiled({phi})"),
        }
    }

    /// Probe universe keeping each law's enumeration tractable.
    pub fn default_universe(&self) -> UniverseParams {
        match self {
            Law::K => UniverseParams::standard(),
            Law::S => UniverseParams::new(&["a", "b", "c"], 3, 3),
            Law::Compiled(_) => UniverseParams::new(&["a", "b", "c"], 2, 3),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LawCheckConfig {
    pub law: Law,
    pub trials: u64,
    pub seed: u64,
    pub universe: UniverseParams,
}

impl LawCheckConfig {
    pub fn new(law: Law, trials: u64, seed: u64) -> Self {
        let universe = law.default_universe();
        LawCheckConfig {
            law,
            trials,
            seed,
            universe,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    pub trial: u64,
    pub detail: String,
}

/// Outcome of a randomized law check; identical for parallel and
/// sequential runs of the same configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LawReport {
    pub law: String,
    pub trials: u64,
    pub seed: u64,
    pub universe: UniverseParams,
    pub counterexamples: Vec<Counterexample>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "law: {}", self.law)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "universe: {}", self.universe)?;
        writeln!(f, "counterexamples: {}", self.counterexamples.len())?;
        for cex in &self.counterexamples {
            writeln!(f, "  trial {}: {}", cex.trial, cex.detail)?;
        }
        f.write_str(if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn run_trial(cfg: &LawCheckConfig, trial: u64) -> Option<Counterexample> {
    let mut rng = trial_rng(cfg.seed, trial);
    match &cfg.law {
        Law::K => {
            let x = gen_set(&mut rng, &cfg.universe);
            let y = gen_set(&mut rng, &cfg.universe);
            let staged = k_element::<Name>().apply_all(&[x.clone(), y.clone()]);
            match staged.as_ext() {
                Some(got) if *got == x => None,
                got => Some(Counterexample {
                    trial,
                    detail: format!(
                        "K·X·Y != X for X={x} Y={y}: got {}",
                        got.map_or("<intensional>".to_string(), |s| s.to_string())
                    ),
                }),
            }
        }
        Law::S => {
            let x = gen_set(&mut rng, &cfg.universe);
            let y = gen_set(&mut rng, &cfg.universe);
            let z = gen_set(&mut rng, &cfg.universe);
            let staged = s_element::<Name>().apply_all(&[x.clone(), y.clone(), z.clone()]);
            let expected = x.apply(&z).apply(&y.apply(&z));
            match staged.as_ext() {
                Some(got) if *got == expected => None,
                got => Some(Counterexample {
                    trial,
                    detail: format!(
                        "S·X·Y·Z != (X·Z)·(Y·Z) for X={x} Y={y} Z={z}: got {} expected {expected}",
                        got.map_or("<intensional>".to_string(), |s| s.to_string())
                    ),
                }),
            }
        }
        Law::Compiled(phi) => {
            let args: Vec<CanonSet<Name>> = (0..phi.arity())
                .map(|_| gen_set(&mut rng, &cfg.universe))
                .collect();
            let staged = compile(phi.clone()).apply_all(&args);
            let expected = eval(phi, &args).expect("generated args match arity");
            match staged.as_ext() {
                Some(got) if *got == expected => None,
                got => {
                    Some(Counterexample {
                        trial,
                        detail: format!(
                        "compiled {phi} disagrees with eval on args {}: got {} expected {expected}",
                        args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("; "),
                        got.map_or("<intensional>".to_string(), |s| s.to_string())
                    ),
                    })
                }
            }
        }
    }
}

fn assemble(cfg: &LawCheckConfig, results: Vec<Option<Counterexample>>) -> LawReport {
    LawReport {
        law: cfg.law.label(),
        trials: cfg.trials,
        seed: cfg.seed,
        universe: cfg.universe.clone(),
        counterexamples: results.into_iter().flatten().collect(),
    }
}

/// Probe a law on independent randomized trials; parallel when the
/// `parallel` feature is on.
pub fn check_laws(cfg: &LawCheckConfig) -> LawReport {
    assemble(cfg, map_trials(cfg.trials, |i| run_trial(cfg, i)))
}

/// Sequential variant of [`check_laws`]; same report for the same
/// configuration.
pub fn check_laws_sequential(cfg: &LawCheckConfig) -> LawReport {
    assemble(cfg, map_trials_seq(cfg.trials, |i| run_trial(cfg, i)))
}
