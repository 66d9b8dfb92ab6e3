//! Janet and Janet-like divisions.
//!
//! For a set of leading terms of one function, the terms are partitioned
//! level by level along the ranking's `index_order`: at level `i` a group
//! holds the terms agreeing in the degrees of the first `i` coordinates.
//! Inside a group, a term whose degree in the current coordinate is below
//! the group maximum receives a difference power `θ_i^s`: for Janet-like
//! division `s` is the gap to the next larger degree in the group, for Janet
//! division `s = 1` (the coordinate is nonmultiplicative).
//!
//! The allowed shifts `J(g, G)` of an element are the exponents lying
//! strictly below every one of its difference powers.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linpoly::LinearPoly;
use crate::ring::{term_divides, ExponentVector, Ranking, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DivisionKind {
    Janet,
    #[default]
    JanetLike,
}

impl DivisionKind {
    pub fn name(self) -> &'static str {
        match self {
            DivisionKind::Janet => "janet",
            DivisionKind::JanetLike => "janet-like",
        }
    }
}

impl std::str::FromStr for DivisionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "janet" => Ok(DivisionKind::Janet),
            "janet-like" | "janetlike" => Ok(DivisionKind::JanetLike),
            _ => Err(Error::InvalidOption(format!("unknown division '{s}' (expected janet or janet-like)"))),
        }
    }
}

/// A difference power `θ_index^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DifferencePower {
    pub index: usize,
    pub power: u32,
}

impl DifferencePower {
    pub fn exponent(&self, n: usize) -> ExponentVector {
        ExponentVector::unit(n, self.index, self.power)
    }
}

/// True when `beta` lies in `J` for the given difference powers.
pub fn in_cone(beta: &ExponentVector, powers: &[DifferencePower]) -> bool {
    powers.iter().all(|dp| beta[dp.index] < dp.power)
}

/// Shift `ϑ ∈ J` with `ϑ∘lm = t`, if any.
pub fn j_divides(lm: &Term, powers: &[DifferencePower], t: &Term) -> Option<ExponentVector> {
    term_divides(lm, t).filter(|beta| in_cone(beta, powers))
}

/// Difference powers (or, for Janet division, nonmultiplicative indices with
/// power 1) for every element of a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionMeta {
    pub kind: DivisionKind,
    pub powers: Vec<Vec<DifferencePower>>,
}

impl DivisionMeta {
    /// The nonmultiplicative indices of element `i` (Janet reading).
    pub fn nonmultiplicative(&self, i: usize) -> Vec<usize> {
        self.powers[i].iter().map(|dp| dp.index).collect()
    }
}

/// Computes division metadata for `F` by explicit partitioning.
pub fn compute_division_meta(f: &[LinearPoly], ranking: &Ranking, kind: DivisionKind) -> Result<DivisionMeta> {
    let mut lms = Vec::with_capacity(f.len());
    for p in f {
        lms.push(p.lm().cloned().ok_or_else(|| Error::InvalidInput("zero polynomial in division set".into()))?);
    }
    let powers = division_meta_for_terms(&lms, ranking, kind)?;
    Ok(DivisionMeta { kind, powers })
}

/// Same as [`compute_division_meta`] on bare leading terms.
pub fn division_meta_for_terms(
    lms: &[Term],
    ranking: &Ranking,
    kind: DivisionKind,
) -> Result<Vec<Vec<DifferencePower>>> {
    let mut seen = HashMap::new();
    for (i, t) in lms.iter().enumerate() {
        if seen.insert(t, i).is_some() {
            return Err(Error::DuplicateLeadingMonomial(format!("{t:?}")));
        }
    }
    let mut powers = vec![Vec::new(); lms.len()];
    let mut by_function: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, t) in lms.iter().enumerate() {
        by_function.entry(t.func).or_default().push(i);
    }
    for members in by_function.into_values() {
        partition(lms, members, 0, ranking.index_order(), kind, &mut powers);
    }
    for p in &mut powers {
        p.sort();
    }
    Ok(powers)
}

fn partition(
    lms: &[Term],
    members: Vec<usize>,
    level: usize,
    index_order: &[usize],
    kind: DivisionKind,
    powers: &mut [Vec<DifferencePower>],
) {
    if level == index_order.len() || members.len() < 2 {
        return;
    }
    let coord = index_order[level];
    let mut degrees: Vec<u32> = members.iter().map(|&i| lms[i].shift[coord]).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let max = *degrees.last().expect("nonempty group");
    for &i in &members {
        let d = lms[i].shift[coord];
        if d < max {
            let power = match kind {
                DivisionKind::Janet => 1,
                DivisionKind::JanetLike => {
                    let next = degrees.iter().copied().find(|&e| e > d).expect("max is larger");
                    next - d
                }
            };
            powers[i].push(DifferencePower { index: coord, power });
        }
    }
    for d in degrees {
        let group: Vec<usize> = members.iter().copied().filter(|&i| lms[i].shift[coord] == d).collect();
        partition(lms, group, level + 1, index_order, kind, powers);
    }
}

#[derive(Debug, Clone)]
enum Node {
    Branch(Vec<(u32, Node)>),
    Leaf(usize),
}

/// Trie over (function, degree in each coordinate along `index_order`)
/// whose leaves carry element ids. Lookup of the unique J-reductor walks one
/// branch per level.
#[derive(Debug, Clone)]
pub struct JanetTree {
    kind: DivisionKind,
    index_order: Vec<usize>,
    n: usize,
    roots: Vec<Option<Node>>,
    len: usize,
}

impl JanetTree {
    pub fn new(ranking: &Ranking, kind: DivisionKind) -> Self {
        JanetTree {
            kind,
            index_order: ranking.index_order().to_vec(),
            n: ranking.n(),
            roots: vec![None; ranking.m()],
            len: 0,
        }
    }

    pub fn kind(&self) -> DivisionKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, lm: &Term, id: usize) -> Result<()> {
        let mut node = self.roots[lm.func].get_or_insert_with(empty_node);
        for &coord in &self.index_order {
            let d = lm.shift[coord];
            let Node::Branch(children) = node else { unreachable!("leaves only at full depth") };
            let pos = match children.binary_search_by_key(&d, |(e, _)| *e) {
                Ok(pos) => pos,
                Err(pos) => {
                    children.insert(pos, (d, empty_node()));
                    pos
                }
            };
            node = &mut children[pos].1;
        }
        match node {
            Node::Leaf(_) => Err(Error::DuplicateLeadingMonomial(format!("{lm:?}"))),
            Node::Branch(children) if children.is_empty() => {
                *node = Node::Leaf(id);
                self.len += 1;
                Ok(())
            }
            Node::Branch(_) => unreachable!("branch at full depth"),
        }
    }

    /// Removes the element with leading term `lm`, returning its id.
    pub fn remove(&mut self, lm: &Term) -> Option<usize> {
        let root = self.roots[lm.func].as_mut()?;
        let removed = remove_rec(root, lm, &self.index_order);
        if removed.is_some() {
            self.len -= 1;
            if matches!(root, Node::Branch(c) if c.is_empty()) {
                self.roots[lm.func] = None;
            }
        }
        removed
    }

    /// The unique element whose leading term J-divides `t`, with the shift.
    pub fn j_reductor(&self, t: &Term) -> Option<(usize, ExponentVector)> {
        let mut node = self.roots.get(t.func)?.as_ref()?;
        let mut beta = ExponentVector::zeros(self.n);
        for &coord in &self.index_order {
            let Node::Branch(children) = node else { unreachable!() };
            let d = t.shift[coord];
            let pos = children.partition_point(|(e, _)| *e <= d).checked_sub(1)?;
            let (e, child) = &children[pos];
            if self.kind == DivisionKind::Janet && pos + 1 < children.len() && *e != d {
                return None;
            }
            beta.set(coord, d - e);
            node = child;
        }
        match node {
            Node::Leaf(id) => Some((*id, beta)),
            Node::Branch(_) => None,
        }
    }

    /// Difference powers of the stored element with leading term `lm`.
    pub fn difference_powers(&self, lm: &Term) -> Vec<DifferencePower> {
        let mut out = Vec::new();
        let Some(mut node) = self.roots.get(lm.func).and_then(Option::as_ref) else {
            return out;
        };
        for &coord in &self.index_order {
            let Node::Branch(children) = node else { unreachable!() };
            let d = lm.shift[coord];
            let Ok(pos) = children.binary_search_by_key(&d, |(e, _)| *e) else {
                return Vec::new();
            };
            if let Some((next, _)) = children.get(pos + 1) {
                let power = match self.kind {
                    DivisionKind::Janet => 1,
                    DivisionKind::JanetLike => next - d,
                };
                out.push(DifferencePower { index: coord, power });
            }
            node = &children[pos].1;
        }
        out.sort();
        out
    }

    /// All stored (leading term, id) pairs.
    pub fn entries(&self) -> Vec<(Term, usize)> {
        let mut out = Vec::new();
        for (func, root) in self.roots.iter().enumerate() {
            if let Some(root) = root {
                let mut path = ExponentVector::zeros(self.n);
                collect(root, 0, &self.index_order, func, &mut path, &mut out);
            }
        }
        out
    }
}

fn empty_node() -> Node {
    Node::Branch(Vec::new())
}

fn remove_rec(node: &mut Node, lm: &Term, index_order: &[usize]) -> Option<usize> {
    let Some((&coord, rest)) = index_order.split_first() else {
        return match node {
            Node::Leaf(id) => Some(*id),
            Node::Branch(_) => None,
        };
    };
    let Node::Branch(children) = node else { return None };
    let pos = children.binary_search_by_key(&lm.shift[coord], |(e, _)| *e).ok()?;
    let removed = remove_rec(&mut children[pos].1, lm, rest)?;
    let now_empty = match &children[pos].1 {
        Node::Leaf(_) => rest.is_empty(),
        Node::Branch(c) => c.is_empty(),
    };
    if now_empty {
        children.remove(pos);
    }
    Some(removed)
}

fn collect(
    node: &Node,
    level: usize,
    index_order: &[usize],
    func: usize,
    path: &mut ExponentVector,
    out: &mut Vec<(Term, usize)>,
) {
    match node {
        Node::Leaf(id) => out.push((Term::new(func, path.clone()), *id)),
        Node::Branch(children) => {
            for (d, child) in children {
                path.set(index_order[level], *d);
                collect(child, level + 1, index_order, func, path, out);
            }
        }
    }
}

/// Free-function form of [`JanetTree::j_reductor`].
pub fn j_reductor(t: &Term, tree: &JanetTree) -> Option<(usize, ExponentVector)> {
    tree.j_reductor(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Priority, RingSignature};
    use proptest::prelude::*;

    fn ranking(n: usize, m: usize) -> Ranking {
        Ranking::with_orders(MonomialOrder::DegRevLex, Priority::TermOverPosition, (0..m).collect(), (0..n).collect())
            .unwrap()
    }

    fn t(func: usize, s: &[u32]) -> Term {
        Term::new(func, ExponentVector::from_slice(s))
    }

    fn dp(index: usize, power: u32) -> DifferencePower {
        DifferencePower { index, power }
    }

    #[test]
    fn toric_leading_terms() {
        let r = ranking(4, 1);
        let lms = [t(0, &[7, 0, 0, 0]), t(0, &[4, 0, 0, 1]), t(0, &[3, 1, 0, 0])];
        let meta = division_meta_for_terms(&lms, &r, DivisionKind::JanetLike).unwrap();
        assert_eq!(meta[0], vec![]);
        assert_eq!(meta[1], vec![dp(0, 3)]);
        assert_eq!(meta[2], vec![dp(0, 1)]);
        let janet = division_meta_for_terms(&lms, &r, DivisionKind::Janet).unwrap();
        assert_eq!(janet[1], vec![dp(0, 1)]);
    }

    #[test]
    fn singleton_and_pair() {
        let r = ranking(2, 1);
        assert_eq!(division_meta_for_terms(&[t(0, &[2, 5])], &r, DivisionKind::JanetLike).unwrap(), vec![vec![]]);
        let meta = division_meta_for_terms(&[t(0, &[1, 0]), t(0, &[0, 1])], &r, DivisionKind::JanetLike).unwrap();
        assert_eq!(meta, vec![vec![], vec![dp(0, 1)]]);
    }

    #[test]
    fn duplicate_leading_terms_rejected() {
        let r = ranking(2, 1);
        let err = division_meta_for_terms(&[t(0, &[1, 0]), t(0, &[1, 0])], &r, DivisionKind::Janet);
        assert!(matches!(err, Err(Error::DuplicateLeadingMonomial(_))));
        let mut tree = JanetTree::new(&r, DivisionKind::Janet);
        tree.insert(&t(0, &[1, 0]), 0).unwrap();
        assert!(tree.insert(&t(0, &[1, 0]), 1).is_err());
    }

    #[test]
    fn functions_are_partitioned_separately() {
        let sig = RingSignature::new(&["x", "y"], &["u", "v"], &[]).unwrap();
        let r = Ranking::new(&sig, MonomialOrder::DegRevLex, Priority::TermOverPosition);
        let meta = division_meta_for_terms(&[t(0, &[2, 0]), t(1, &[0, 1])], &r, DivisionKind::JanetLike).unwrap();
        assert_eq!(meta, vec![vec![], vec![]]);
    }

    #[test]
    fn tree_lookup_examples() {
        let r = ranking(2, 1);
        let mut tree = JanetTree::new(&r, DivisionKind::JanetLike);
        tree.insert(&t(0, &[1, 0]), 7).unwrap();
        assert_eq!(tree.j_reductor(&t(0, &[3, 2])), Some((7, ExponentVector::from_slice(&[2, 2]))));
        tree.insert(&t(0, &[0, 1]), 8).unwrap();
        // DP of u[x,y+1] is Tx, so Tx∘lm is outside its cone; u[x+1,y] owns it instead
        assert_eq!(tree.difference_powers(&t(0, &[0, 1])), vec![dp(0, 1)]);
        assert_eq!(tree.j_reductor(&t(0, &[1, 1])), Some((7, ExponentVector::from_slice(&[0, 1]))));
        assert_eq!(tree.j_reductor(&t(0, &[0, 0])), None);
        assert_eq!(tree.remove(&t(0, &[1, 0])), Some(7));
        assert_eq!(tree.j_reductor(&t(0, &[1, 1])), Some((8, ExponentVector::from_slice(&[1, 0]))));
        assert_eq!(tree.len(), 1);
        assert_eq!(tree.remove(&t(0, &[1, 0])), None);
    }

    #[test]
    fn janet_lookup_requires_exact_degrees_below_max() {
        let r = ranking(1, 1);
        let mut tree = JanetTree::new(&r, DivisionKind::Janet);
        tree.insert(&t(0, &[1]), 0).unwrap();
        tree.insert(&t(0, &[4]), 1).unwrap();
        assert_eq!(tree.j_reductor(&t(0, &[2])), None);
        assert_eq!(tree.j_reductor(&t(0, &[1])), Some((0, ExponentVector::from_slice(&[0]))));
        assert_eq!(tree.j_reductor(&t(0, &[9])), Some((1, ExponentVector::from_slice(&[5]))));
        let mut like = JanetTree::new(&r, DivisionKind::JanetLike);
        like.insert(&t(0, &[1]), 0).unwrap();
        like.insert(&t(0, &[4]), 1).unwrap();
        assert_eq!(like.j_reductor(&t(0, &[3])), Some((0, ExponentVector::from_slice(&[2]))));
    }

    fn arb_lms() -> impl Strategy<Value = Vec<Term>> {
        prop::collection::btree_set((0usize..2, prop::collection::vec(0u32..5, 3)), 1..8)
            .prop_map(|set| set.into_iter().map(|(f, s)| Term::new(f, s.into())).collect())
    }

    fn arb_query() -> impl Strategy<Value = Term> {
        (0usize..2, prop::collection::vec(0u32..8, 3)).prop_map(|(f, s)| Term::new(f, s.into()))
    }

    fn arb_kind() -> impl Strategy<Value = DivisionKind> {
        prop_oneof![Just(DivisionKind::Janet), Just(DivisionKind::JanetLike)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn tree_matches_partition_and_scan(
            lms in arb_lms(),
            queries in prop::collection::vec(arb_query(), 25),
            kind in arb_kind(),
            perm in Just(vec![2usize, 0, 1]),
        ) {
            let r = Ranking::with_orders(MonomialOrder::DegRevLex, Priority::TermOverPosition, vec![0, 1], perm).unwrap();
            let meta = division_meta_for_terms(&lms, &r, kind).unwrap();
            let mut tree = JanetTree::new(&r, kind);
            for (i, lm) in lms.iter().enumerate() {
                tree.insert(lm, i).unwrap();
            }
            for (i, lm) in lms.iter().enumerate() {
                prop_assert_eq!(&tree.difference_powers(lm), &meta[i]);
            }
            for q in &queries {
                let scan: Vec<(usize, ExponentVector)> = lms
                    .iter()
                    .enumerate()
                    .filter_map(|(i, lm)| j_divides(lm, &meta[i], q).map(|b| (i, b)))
                    .collect();
                // at most one J-divisor, and every J-division is a plain division
                prop_assert!(scan.len() <= 1);
                for (i, b) in &scan {
                    let d = term_divides(&lms[*i], q);
                    prop_assert_eq!(d.as_ref(), Some(b));
                }
                prop_assert_eq!(tree.j_reductor(q), scan.into_iter().next());
            }
            let mut entries = tree.entries();
            entries.sort_by_key(|e| e.1);
            prop_assert_eq!(entries.into_iter().map(|e| e.0).collect::<Vec<_>>(), lms.clone());
        }

        #[test]
        fn insert_remove_consistency(lms in arb_lms(), kind in arb_kind()) {
            let r = ranking(3, 2);
            let mut tree = JanetTree::new(&r, kind);
            for (i, lm) in lms.iter().enumerate() {
                tree.insert(lm, i).unwrap();
            }
            for (i, lm) in lms.iter().enumerate().step_by(2) {
                prop_assert_eq!(tree.remove(lm), Some(i));
            }
            let rest: Vec<Term> = lms.iter().skip(1).step_by(2).cloned().collect();
            prop_assert_eq!(tree.len(), rest.len());
            let meta = division_meta_for_terms(&rest, &r, kind).unwrap();
            for (i, lm) in rest.iter().enumerate() {
                prop_assert_eq!(&tree.difference_powers(lm), &meta[i]);
            }
        }
    }
}
