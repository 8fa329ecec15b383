//! Acceptance suite: one test per criterion, each printing a pass line
//! once its assertions hold. Run with `--nocapture` to see the lines.
//!
//! Criteria at a glance: (1) set application equals the
//! subset-enumeration oracle on 1000 random pairs; (2) the K law holds
//! exactly on 1000 probes; (3) the S law holds exactly on 500 probes;
//! (4) compiled applicative expressions agree with direct evaluation,
//! and the compiled projection/substitution agree with K and S on a
//! full probe grid; (5) propositional closure matches formula-level
//! forward chaining and emits sound witnesses; (6) group normalization
//! pins the worked cancellation example, respects cyclic-group
//! equality, and is idempotent.

mod common;

use common::{eval_cyclic, gen_formula, gen_group_term, mp_closure, oracle_apply};
use proofalg::combinators::{compile, eval, k_element, parse_app_expr, s_element, AppExpr};
use proofalg::groups::{
    alg_normalize, parse_term, trace_render, GroupTerm, NormalizeStatus, Presentation, TraceStyle,
};
use proofalg::logic::{
    is_sound_mp_proof, lift, parse_formula, prove, roots_of, theory, Formula, Provability,
};
use proofalg::probe::{gen_set, trial_rng, UniverseParams};
use proofalg::{CanonSet, ClosureStatus, Name, ProofExpr};
use rand::Rng;
use std::collections::BTreeSet;

#[test]
fn criterion_1_application_matches_oracle() {
    let universe = UniverseParams::new(&["a", "b", "c"], 3, 6);
    for trial in 0..1000u64 {
        let mut rng = trial_rng(101, trial);
        let x = gen_set(&mut rng, &universe);
        let y = gen_set(&mut rng, &universe);
        assert_eq!(
            x.apply(&y),
            oracle_apply(&x, &y),
            "application disagrees with oracle for X={x} Y={y}"
        );
    }
    println!(
        "[PASS] criterion 1: apply equals subset-enumeration oracle on 1000/1000 random pairs"
    );
}

#[test]
fn criterion_2_k_law() {
    let universe = UniverseParams::standard();
    for trial in 0..1000u64 {
        let mut rng = trial_rng(202, trial);
        let x = gen_set(&mut rng, &universe);
        let y = gen_set(&mut rng, &universe);
        let staged = k_element::<Name>().apply_all(&[x.clone(), y.clone()]);
        assert_eq!(staged.as_ext(), Some(&x), "K law fails for X={x} Y={y}");
    }
    println!("[PASS] criterion 2: K law exact on 1000/1000 probes");
}

#[test]
fn criterion_3_s_law() {
    let universe = UniverseParams::new(&["a", "b", "c"], 3, 3);
    for trial in 0..500u64 {
        let mut rng = trial_rng(303, trial);
        let x = gen_set(&mut rng, &universe);
        let y = gen_set(&mut rng, &universe);
        let z = gen_set(&mut rng, &universe);
        let staged = s_element::<Name>().apply_all(&[x.clone(), y.clone(), z.clone()]);
        let expected = x.apply(&z).apply(&y.apply(&z));
        assert_eq!(
            staged.as_ext(),
            Some(&expected),
            "S law fails for X={x} Y={y} Z={z}"
        );
    }
    println!("[PASS] criterion 3: S law exact on 500/500 probes");
}

/// Fixed rank-2 basis; the probe grid is every canonical set of at most
/// two of these expressions.
fn grid_sets() -> Vec<CanonSet<Name>> {
    let basis: Vec<ProofExpr<Name>> = ["a", "b", "{}->a", "{a}->b", "{}->{}->a", "{a}->{b}->c"]
        .iter()
        .map(|s| proofalg::parse_expr::<Name>(s).unwrap())
        .collect();
    let mut sets = vec![CanonSet::new()];
    for (i, e) in basis.iter().enumerate() {
        sets.push(CanonSet::singleton(e.clone()));
        for f in &basis[i + 1..] {
            sets.push(CanonSet::from_vec(vec![e.clone(), f.clone()]));
        }
    }
    sets
}

#[test]
fn criterion_4_compiler_matches_eval_and_k_s() {
    // Randomized expressions against the evaluator.
    let arg_universe = UniverseParams::new(&["a", "b", "c"], 2, 3);
    let const_universe = UniverseParams::new(&["a", "b"], 1, 2);
    for trial in 0..200u64 {
        let mut rng = trial_rng(404, trial);
        let arity = rng.random_range(1..=3);
        let phi = AppExpr::new(arity, random_node(&mut rng, arity, 3, &const_universe)).unwrap();
        let element = compile(phi.clone());
        for _ in 0..10 {
            let args: Vec<CanonSet<Name>> = (0..arity)
                .map(|_| gen_set(&mut rng, &arg_universe))
                .collect();
            let staged = element.apply_all(&args);
            let direct = eval(&phi, &args).unwrap();
            assert_eq!(
                staged.as_ext(),
                Some(&direct),
                "compiled {phi} disagrees with eval on {args:?}"
            );
        }
    }

    // Projection phi(X, Y) = X against K on the full grid.
    let sets = grid_sets();
    let projection = compile(parse_app_expr("X1", 2).unwrap());
    for x in &sets {
        for y in &sets {
            let via_phi = projection.apply_all(&[x.clone(), y.clone()]);
            let via_k = k_element::<Name>().apply_all(&[x.clone(), y.clone()]);
            assert_eq!(
                via_phi.as_ext(),
                via_k.as_ext(),
                "projection and K disagree on X={x} Y={y}"
            );
        }
    }

    // Substitution phi(X, Y, Z) = (X Z) (Y Z) against S on the full grid.
    let substitution = compile(parse_app_expr("(X1 X3) (X2 X3)", 3).unwrap());
    for x in &sets {
        for y in &sets {
            for z in &sets {
                let via_phi = substitution.apply_all(&[x.clone(), y.clone(), z.clone()]);
                let via_s = s_element::<Name>().apply_all(&[x.clone(), y.clone(), z.clone()]);
                assert_eq!(
                    via_phi.as_ext(),
                    via_s.as_ext(),
                    "substitution and S disagree on X={x} Y={y} Z={z}"
                );
            }
        }
    }
    println!(
        "[PASS] criterion 4: compiler equals eval on 200x10 probes; \
         compiled projection matches K and compiled substitution matches S on the {}^2/{}^3 grid",
        grid_sets().len(),
        grid_sets().len()
    );
}

fn random_node(
    rng: &mut impl Rng,
    arity: usize,
    depth: usize,
    const_universe: &UniverseParams,
) -> proofalg::combinators::AppNode<Name> {
    use proofalg::combinators::AppNode;
    if depth == 0 || rng.random_bool(0.4) {
        if rng.random_bool(0.75) {
            AppNode::param(rng.random_range(0..arity))
        } else {
            AppNode::constant(gen_set(rng, const_universe))
        }
    } else {
        let f = random_node(rng, arity, depth - 1, const_universe);
        let a = random_node(rng, arity, depth - 1, const_universe);
        AppNode::app(f, a)
    }
}

#[test]
fn criterion_5_propositional_closure() {
    // The worked chain: fixpoint within 3 rounds, q and r derived.
    let axioms = [
        parse_formula("p").unwrap(),
        parse_formula("p => q").unwrap(),
        parse_formula("q => r").unwrap(),
    ];
    let (set, status) = theory(&lift(&axioms), 10).unwrap();
    match status {
        ClosureStatus::Fixpoint { rounds } => assert!(rounds <= 3, "took {rounds} rounds"),
        other => panic!("expected fixpoint, got {other:?}"),
    }
    let roots: BTreeSet<Formula> = roots_of(&set).into_iter().collect();
    assert!(roots.contains(&parse_formula("q").unwrap()));
    assert!(roots.contains(&parse_formula("r").unwrap()));

    // Random axiom sets against formula-level forward chaining; every
    // derivable goal must come back with a structurally sound witness.
    let vars = ["p", "q", "r"];
    for trial in 0..200u64 {
        let mut rng = trial_rng(505, trial);
        let count = rng.random_range(0..=6);
        let axioms: Vec<Formula> = (0..count)
            .map(|_| gen_formula(&mut rng, 3, &vars))
            .collect();
        let start: BTreeSet<Formula> = axioms.iter().cloned().collect();
        let (expected, rounds) = mp_closure(&start);
        let budget = rounds + 1;
        let (set, _) = theory(&lift(&axioms), budget).unwrap();
        let got: BTreeSet<Formula> = roots_of(&set).into_iter().collect();
        assert_eq!(got, expected, "roots diverge from oracle for {axioms:?}");
        for goal in &expected {
            match prove(&axioms, goal, budget).unwrap() {
                Provability::Proved(w) => {
                    assert_eq!(w.root(), goal);
                    assert!(is_sound_mp_proof(&w), "unsound witness {w}");
                }
                other => panic!("{goal} not proved from {axioms:?}: {other:?}"),
            }
        }
    }
    println!(
        "[PASS] criterion 5: chain closure fixpoint in <=3 rounds; \
         roots equal forward-chaining oracle on 200/200 random axiom sets; all witnesses sound"
    );
}

#[test]
fn criterion_6_group_normalization() {
    // The worked cancellation: final term is s (not the unit; the
    // three structural laws leave the left factor standing).
    let red = alg_normalize(
        &Presentation::empty(),
        &parse_term("(s*t^-1)*t").unwrap(),
        100,
    )
    .unwrap();
    assert_eq!(red.final_term(), &parse_term("s").unwrap());
    assert_eq!(
        trace_render(&red, TraceStyle::MacLane),
        "Anfang Th, Sub (ASS), Sub (INV), Ende (ID)"
    );

    // Relator deletion reaches the unit.
    let pres = Presentation::parse("gens: g1 g2\nrel: g1*g2^-1*g1\n").unwrap();
    let red = alg_normalize(&pres, &parse_term("(g1*g2^-1)*g1").unwrap(), 100).unwrap();
    assert_eq!(red.final_term(), &GroupTerm::unit());

    // Cyclic soundness: with relator g^n, words equal modulo n
    // normalize identically, and every step preserves the element.
    for order in 1..=6u32 {
        let relator = vec!["g"; order as usize].join("*");
        let pres = Presentation::parse(&format!("gens: g\nrel: {relator}\n")).unwrap();
        let normal_form = |k: u32| {
            let word = if k == 0 {
                GroupTerm::unit()
            } else {
                parse_term(&vec!["g"; k as usize].join("*")).unwrap()
            };
            let red = alg_normalize(&pres, &word, 10_000).unwrap();
            assert_eq!(red.status, NormalizeStatus::Normalized);
            let mut current = red.initial.clone();
            for step in &red.steps {
                assert_eq!(
                    eval_cyclic(&step.term, i64::from(order)),
                    eval_cyclic(&current, i64::from(order)),
                    "unsound step in g^{k} modulo {order}"
                );
                current = step.term.clone();
            }
            red.final_term().clone()
        };
        for k in 0..=12u32 {
            assert_eq!(
                normal_form(k),
                normal_form(k % order),
                "g^{k} vs g^{} with relator g^{order}",
                k % order
            );
        }
    }

    // Idempotence on random closed terms, with and without relators.
    let gens = ["a", "b"];
    let rel_pres = Presentation::parse("gens: a b\nrel: a*b^-1*a\n").unwrap();
    for trial in 0..500u64 {
        let mut rng = trial_rng(606, trial);
        let size = rng.random_range(1..=10);
        let term = gen_group_term(&mut rng, size, &gens);
        for presentation in [&Presentation::empty(), &rel_pres] {
            let red = alg_normalize(presentation, &term, 10_000).unwrap();
            assert_eq!(red.status, NormalizeStatus::Normalized);
            let again = alg_normalize(presentation, red.final_term(), 10_000).unwrap();
            assert!(
                again.steps.is_empty(),
                "normalization not idempotent on {term}"
            );
        }
    }
    println!(
        "[PASS] criterion 6: cancellation example yields s with the pinned trace; \
         relator case yields 1; cyclic soundness holds for n<=6, k<=12; \
         idempotent on 500/500 random closed terms"
    );
}
