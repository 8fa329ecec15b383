//! Shared test oracles: independent brute-force implementations that
//! library results are compared against. Nothing here calls into the
//! code paths under test.

#![allow(dead_code)]

use proofalg::groups::GroupTerm;
use proofalg::logic::Formula;
use proofalg::{Alphabet, CanonSet, ProofExpr};
use rand::Rng;
use std::collections::BTreeSet;

/// Subset-enumeration application oracle: enumerate every subset of
/// `y` and collect the bodies of arrows in `x` whose head equals that
/// subset exactly.
pub fn oracle_apply<A: Alphabet>(x: &CanonSet<A>, y: &CanonSet<A>) -> CanonSet<A> {
    let elems: Vec<ProofExpr<A>> = y.iter().cloned().collect();
    assert!(elems.len() < 20, "oracle is exponential in |Y|");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << elems.len()) {
        let subset: CanonSet<A> = elems
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect();
        for e in x {
            if let Some((head, body)) = e.as_arrow() {
                if *head == subset {
                    out.push(body.clone());
                }
            }
        }
    }
    CanonSet::from_vec(out)
}

/// All canonical sets of at most `max_size` elements drawn from `pool`.
pub fn small_subsets<A: Alphabet>(pool: &[ProofExpr<A>], max_size: usize) -> Vec<CanonSet<A>> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    collect_subsets(pool, 0, max_size, &mut chosen, &mut out);
    out
}

fn collect_subsets<A: Alphabet>(
    pool: &[ProofExpr<A>],
    from: usize,
    remaining: usize,
    chosen: &mut Vec<ProofExpr<A>>,
    out: &mut Vec<CanonSet<A>>,
) {
    out.push(CanonSet::from_vec(chosen.clone()));
    if remaining == 0 {
        return;
    }
    for i in from..pool.len() {
        chosen.push(pool[i].clone());
        collect_subsets(pool, i + 1, remaining - 1, chosen, out);
        chosen.pop();
    }
}

/// Every expression of rank at most `max_rank` over `atoms`, heads
/// limited to `max_set` elements of the lower stratum.
pub fn enumerate_exprs<A: Alphabet>(
    atoms: &[A],
    max_rank: usize,
    max_set: usize,
) -> Vec<ProofExpr<A>> {
    let mut universe: Vec<ProofExpr<A>> = atoms.iter().cloned().map(ProofExpr::leaf).collect();
    universe.sort();
    for _ in 0..max_rank {
        let prev = universe.clone();
        let mut next = universe;
        for head in small_subsets(&prev, max_set) {
            for body in &prev {
                next.push(ProofExpr::arrow(head.clone(), body.clone()));
            }
        }
        next.sort();
        next.dedup();
        universe = next;
    }
    universe
}

/// Formula-level forward chaining under modus ponens. Returns the
/// closure and the number of rounds until it stopped changing,
/// counting the confirming round.
pub fn mp_closure(start: &BTreeSet<Formula>) -> (BTreeSet<Formula>, usize) {
    let mut current = start.clone();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut next = current.clone();
        for f in &current {
            if let Formula::Implies(a, b) = f {
                if current.contains(a) {
                    next.insert((**b).clone());
                }
            }
        }
        if next == current {
            return (current, rounds);
        }
        current = next;
    }
}

/// Random formula of the given depth over the variable pool.
pub fn gen_formula<R: Rng>(rng: &mut R, depth: usize, vars: &[&str]) -> Formula {
    if depth == 0 || rng.random_bool(0.4) {
        Formula::var(vars[rng.random_range(0..vars.len())])
    } else {
        let sub = |rng: &mut R| gen_formula(rng, depth - 1, vars);
        match rng.random_range(0..4u8) {
            0 => Formula::not(sub(rng)),
            1 => {
                let l = sub(rng);
                Formula::and(l, sub(rng))
            }
            2 => {
                let l = sub(rng);
                Formula::or(l, sub(rng))
            }
            _ => {
                let l = sub(rng);
                Formula::implies(l, sub(rng))
            }
        }
    }
}

/// Random closed group term with exactly `size` leaves and unary nodes
/// combined, over the generator pool plus the unit.
pub fn gen_group_term<R: Rng>(rng: &mut R, size: usize, gens: &[&str]) -> GroupTerm {
    if size <= 1 {
        let i = rng.random_range(0..=gens.len());
        if i == 0 {
            GroupTerm::unit()
        } else {
            GroupTerm::gen(gens[i - 1])
        }
    } else if rng.random_bool(0.3) {
        GroupTerm::inv(gen_group_term(rng, size - 1, gens))
    } else {
        let left = rng.random_range(1..size);
        GroupTerm::mul(
            gen_group_term(rng, left, gens),
            gen_group_term(rng, size - left, gens),
        )
    }
}

/// Position-enumeration rewriting oracle: apply `local` at the root and
/// recursively inside each child, splicing results back by
/// reconstruction rather than by path surgery.
pub fn oracle_rewrites(
    term: &GroupTerm,
    local: &dyn Fn(&GroupTerm) -> Vec<GroupTerm>,
) -> BTreeSet<GroupTerm> {
    let mut out: BTreeSet<GroupTerm> = local(term).into_iter().collect();
    match term {
        GroupTerm::Inv(inner) => {
            for t in oracle_rewrites(inner, local) {
                out.insert(GroupTerm::inv(t));
            }
        }
        GroupTerm::Mul(l, r) => {
            for t in oracle_rewrites(l, local) {
                out.insert(GroupTerm::mul(t, (**r).clone()));
            }
            for t in oracle_rewrites(r, local) {
                out.insert(GroupTerm::mul((**l).clone(), t));
            }
        }
        _ => {}
    }
    out
}

pub fn oracle_ass_steps(term: &GroupTerm) -> BTreeSet<GroupTerm> {
    oracle_rewrites(term, &|t| {
        let mut out = Vec::new();
        if let GroupTerm::Mul(l, r) = t {
            if let GroupTerm::Mul(u, v) = &**l {
                out.push(GroupTerm::mul(
                    (**u).clone(),
                    GroupTerm::mul((**v).clone(), (**r).clone()),
                ));
            }
            if let GroupTerm::Mul(v, w) = &**r {
                out.push(GroupTerm::mul(
                    GroupTerm::mul((**l).clone(), (**v).clone()),
                    (**w).clone(),
                ));
            }
        }
        out
    })
}

pub fn oracle_inv_steps(term: &GroupTerm) -> BTreeSet<GroupTerm> {
    oracle_rewrites(term, &|t| {
        if let GroupTerm::Mul(l, r) = t {
            let cancels = matches!(&**r, GroupTerm::Inv(x) if **x == **l)
                || matches!(&**l, GroupTerm::Inv(x) if **x == **r);
            if cancels {
                return vec![GroupTerm::unit()];
            }
        }
        Vec::new()
    })
}

pub fn oracle_id_steps(term: &GroupTerm) -> BTreeSet<GroupTerm> {
    oracle_rewrites(term, &|t| {
        let mut out = Vec::new();
        if let GroupTerm::Mul(l, r) = t {
            if **r == GroupTerm::Unit {
                out.push((**l).clone());
            }
            if **l == GroupTerm::Unit {
                out.push((**r).clone());
            }
        }
        out
    })
}

pub fn oracle_relator_steps(term: &GroupTerm, relator: &GroupTerm) -> BTreeSet<GroupTerm> {
    oracle_rewrites(term, &|t| {
        if t == relator {
            vec![GroupTerm::unit()]
        } else {
            Vec::new()
        }
    })
}

/// Evaluate a closed term in the cyclic group of order `modulus`,
/// sending every generator to 1.
pub fn eval_cyclic(term: &GroupTerm, modulus: i64) -> i64 {
    let raw = match term {
        GroupTerm::Unit => 0,
        GroupTerm::Gen(_) => 1,
        GroupTerm::Var(v) => panic!("open term in cyclic evaluation: {v}"),
        GroupTerm::Inv(t) => -eval_cyclic(t, modulus),
        GroupTerm::Mul(l, r) => eval_cyclic(l, modulus) + eval_cyclic(r, modulus),
    };
    raw.rem_euclid(modulus)
}

/// Whether any subterm matches a contracting pattern: `u*1`, `1*u`,
/// `u*u^-1`, `u^-1*u`, or a relator occurrence.
pub fn has_forbidden_subterm(term: &GroupTerm, relators: &[GroupTerm]) -> bool {
    let here = relators.iter().any(|r| r == term)
        || match term {
            GroupTerm::Mul(l, r) => {
                **r == GroupTerm::Unit
                    || **l == GroupTerm::Unit
                    || matches!(&**r, GroupTerm::Inv(x) if **x == **l)
                    || matches!(&**l, GroupTerm::Inv(x) if **x == **r)
            }
            _ => false,
        };
    here || match term {
        GroupTerm::Inv(t) => has_forbidden_subterm(t, relators),
        GroupTerm::Mul(l, r) => {
            has_forbidden_subterm(l, relators) || has_forbidden_subterm(r, relators)
        }
        _ => false,
    }
}

/// Whether no subterm is a left-nested product.
pub fn fully_right_associated(term: &GroupTerm) -> bool {
    match term {
        GroupTerm::Unit | GroupTerm::Gen(_) | GroupTerm::Var(_) => true,
        GroupTerm::Inv(t) => fully_right_associated(t),
        GroupTerm::Mul(l, r) => {
            !matches!(&**l, GroupTerm::Mul(..))
                && fully_right_associated(l)
                && fully_right_associated(r)
        }
    }
}

/// Right-associate a term by flattening each product spine and folding
/// the factors back from the right; independent of the library's
/// rotation strategy.
pub fn right_assoc_oracle(term: &GroupTerm) -> GroupTerm {
    fn flatten(t: &GroupTerm, out: &mut Vec<GroupTerm>) {
        match t {
            GroupTerm::Mul(l, r) => {
                flatten(l, out);
                flatten(r, out);
            }
            GroupTerm::Inv(x) => out.push(GroupTerm::inv(right_assoc_oracle(x))),
            other => out.push(other.clone()),
        }
    }
    let mut factors = Vec::new();
    flatten(term, &mut factors);
    let mut rev = factors.into_iter().rev();
    let last = rev.next().expect("a term has at least one factor");
    rev.fold(last, |acc, f| GroupTerm::mul(f, acc))
}
