//! The carrier algebra: proof expressions, canonical finite sets, and
//! application between finite sets.
//!
//! A proof expression is an atom of the alphabet or a rule `α -> x`
//! pairing a finite head set with a body expression. Finite sets are
//! kept duplicate-free in a fixed total order, so set equality is plain
//! structural equality and every set has exactly one printed form.

use crate::alphabet::Alphabet;
use std::fmt;

/// A proof expression over alphabet `A`.
///
/// The derived order is the canonical one used everywhere: leaves sort
/// before arrows, leaves by atom order, arrows lexicographically by
/// head sequence and then body. Empty heads are legal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum ProofExpr<A> {
    Leaf(A),
    Arrow(CanonSet<A>, Box<ProofExpr<A>>),
}

impl<A: Alphabet> ProofExpr<A> {
    pub fn leaf(atom: A) -> Self {
        ProofExpr::Leaf(atom)
    }

    pub fn arrow(head: CanonSet<A>, body: ProofExpr<A>) -> Self {
        ProofExpr::Arrow(head, Box::new(body))
    }

    /// The atom this expression concludes with: the leaf at the end of
    /// the body chain.
    pub fn root(&self) -> &A {
        let mut cur = self;
        loop {
            match cur {
                ProofExpr::Leaf(a) => return a,
                ProofExpr::Arrow(_, body) => cur = body,
            }
        }
    }

    /// Construction stage: 0 for atoms, otherwise one more than the
    /// largest rank among head elements and body.
    pub fn rank(&self) -> usize {
        match self {
            ProofExpr::Leaf(_) => 0,
            ProofExpr::Arrow(head, body) => {
                let inner = head
                    .iter()
                    .map(ProofExpr::rank)
                    .max()
                    .unwrap_or(0)
                    .max(body.rank());
                1 + inner
            }
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, ProofExpr::Leaf(_))
    }

    pub fn as_arrow(&self) -> Option<(&CanonSet<A>, &ProofExpr<A>)> {
        match self {
            ProofExpr::Leaf(_) => None,
            ProofExpr::Arrow(head, body) => Some((head, body)),
        }
    }
}

impl<A: Alphabet> fmt::Display for ProofExpr<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofExpr::Leaf(a) => write!(f, "{a}"),
            ProofExpr::Arrow(head, body) => write!(f, "{head}->{body}"),
        }
    }
}

/// A duplicate-free finite set of proof expressions in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonSet<A> {
    elems: Vec<ProofExpr<A>>,
}

impl<A: Alphabet> Default for CanonSet<A> {
    fn default() -> Self {
        CanonSet { elems: Vec::new() }
    }
}

impl<A: Alphabet> CanonSet<A> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Canonicalize a raw sequence: sort and deduplicate. Idempotent.
    pub fn from_vec(mut elems: Vec<ProofExpr<A>>) -> Self {
        elems.sort();
        elems.dedup();
        CanonSet { elems }
    }

    pub fn singleton(elem: ProofExpr<A>) -> Self {
        CanonSet { elems: vec![elem] }
    }

    /// Build from a vector already in strictly increasing order.
    pub(crate) fn from_sorted(elems: Vec<ProofExpr<A>>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        CanonSet { elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProofExpr<A>> {
        self.elems.iter()
    }

    pub fn elems(&self) -> &[ProofExpr<A>] {
        &self.elems
    }

    pub fn contains(&self, elem: &ProofExpr<A>) -> bool {
        self.elems.binary_search(elem).is_ok()
    }

    pub fn is_subset(&self, other: &CanonSet<A>) -> bool {
        let mut theirs = other.elems.iter();
        'mine: for e in &self.elems {
            for t in theirs.by_ref() {
                match t.cmp(e) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'mine,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &CanonSet<A>) -> CanonSet<A> {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.elems.len() && j < other.elems.len() {
            match self.elems[i].cmp(&other.elems[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.elems[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.elems[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.elems[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.elems[i..]);
        out.extend_from_slice(&other.elems[j..]);
        CanonSet::from_sorted(out)
    }

    /// Application `X·Y`: the bodies of arrows in `self` whose head is
    /// contained in `arg`. Leaves contribute nothing. The head test is a
    /// subset check on canonical sequences; no subset of `arg` is ever
    /// enumerated.
    pub fn apply(&self, arg: &CanonSet<A>) -> CanonSet<A> {
        let mut out = Vec::new();
        for e in &self.elems {
            if let ProofExpr::Arrow(head, body) = e {
                if head.is_subset(arg) {
                    out.push((**body).clone());
                }
            }
        }
        CanonSet::from_vec(out)
    }
}

impl<A: Alphabet> FromIterator<ProofExpr<A>> for CanonSet<A> {
    fn from_iter<I: IntoIterator<Item = ProofExpr<A>>>(iter: I) -> Self {
        CanonSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a, A: Alphabet> IntoIterator for &'a CanonSet<A> {
    type Item = &'a ProofExpr<A>;
    type IntoIter = std::slice::Iter<'a, ProofExpr<A>>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl<A: Alphabet> fmt::Display for CanonSet<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// All subsets of `set`, each canonical. Intended for small sets only.
pub(crate) fn subsets<A: Alphabet>(set: &CanonSet<A>) -> Vec<CanonSet<A>> {
    let n = set.len();
    assert!(n < 24, "subset enumeration over a set of {n} elements");
    (0..1u32 << n)
        .map(|mask| {
            let elems = set
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            CanonSet::from_sorted(elems)
        })
        .collect()
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
    fn root_of_leaf() {
        assert_eq!(n("a").root(), &Name::new("a"));
    }

    #[test]
    fn root_descends_nested_bodies() {
        // {{}->b}->({}->p) concludes with p.
        let e = ProofExpr::arrow(
            set(vec![ProofExpr::arrow(CanonSet::new(), n("b"))]),
            ProofExpr::arrow(CanonSet::new(), n("p")),
        );
        assert_eq!(e.root(), &Name::new("p"));
    }

    #[test]
    fn root_of_display_tree() {
        // {{{a,b}->c, d}->g, {e,f}->h}->k concludes with k.
        let abc = ProofExpr::arrow(set(vec![n("a"), n("b")]), n("c"));
        let g = ProofExpr::arrow(set(vec![abc, n("d")]), n("g"));
        let h = ProofExpr::arrow(set(vec![n("e"), n("f")]), n("h"));
        let k = ProofExpr::arrow(set(vec![g, h]), n("k"));
        assert_eq!(k.root(), &Name::new("k"));
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn rank_frozen_values() {
        assert_eq!(n("a").rank(), 0);
        let r1 = ProofExpr::arrow(set(vec![n("a"), n("b")]), n("c"));
        assert_eq!(r1.rank(), 1);
        let r2 = ProofExpr::arrow(
            set(vec![ProofExpr::arrow(set(vec![n("a")]), n("b"))]),
            n("c"),
        );
        assert_eq!(r2.rank(), 2);
        // Empty head still counts one construction step.
        assert_eq!(ProofExpr::arrow(CanonSet::new(), n("a")).rank(), 1);
    }

    #[test]
    fn canonicalize_sorts_and_dedupes() {
        let s = set(vec![n("b"), n("a"), n("a")]);
        assert_eq!(s.elems().len(), 2);
        assert_eq!(s.to_string(), "{a, b}");
        let again = CanonSet::from_vec(s.elems().to_vec());
        assert_eq!(again, s);
        assert!(set(vec![]).is_empty());
    }

    #[test]
    fn apply_matches_only_contained_heads() {
        let x = set(vec![
            ProofExpr::arrow(set(vec![n("a"), n("b")]), n("c")),
            ProofExpr::arrow(set(vec![n("d")]), n("e")),
        ]);
        let y = set(vec![n("a"), n("b")]);
        assert_eq!(x.apply(&y), set(vec![n("c")]));
    }

    #[test]
    fn apply_empty_head_fires_on_anything() {
        let x = set(vec![ProofExpr::arrow(CanonSet::new(), n("a"))]);
        assert_eq!(x.apply(&CanonSet::new()), set(vec![n("a")]));
    }

    #[test]
    fn apply_ignores_leaves() {
        let x = set(vec![n("a"), ProofExpr::arrow(set(vec![n("a")]), n("b"))]);
        assert!(x.apply(&CanonSet::new()).is_empty());
    }

    #[test]
    fn subset_and_union() {
        let small = set(vec![n("a"), n("c")]);
        let big = set(vec![n("a"), n("b"), n("c")]);
        assert!(small.is_subset(&big));
        assert!(!big.is_subset(&small));
        assert!(CanonSet::new().is_subset(&small));
        assert_eq!(small.union(&big), big);
    }

    #[test]
    fn subsets_enumerates_powerset() {
        let s = set(vec![n("a"), n("b")]);
        let subs = subsets(&s);
        assert_eq!(subs.len(), 4);
        assert!(subs.contains(&CanonSet::new()));
        assert!(subs.contains(&s));
    }
}
