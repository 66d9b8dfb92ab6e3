//! Completion to minimal Janet(-like) bases and involutive normal forms.
//!
//! The completion keeps a working basis `G` indexed by a [`JanetTree`] and a
//! queue `Q` of pending polynomials. The lowest pending polynomial is reduced
//! to its J-normal form; a nonzero result displaces every basis element whose
//! leading term is a proper multiple of its own, joins `G`, and schedules
//! the prolongations `θ^s∘g` by the difference powers of the basis. Each
//! `(element, difference power)` prolongation is scheduled at most once.
//! When `Q` runs empty, every prolongation is re-checked against the final
//! basis and any violation is fed back into the queue, so returned bases
//! always satisfy `NF_J(θ^s∘g, G) = 0` for all difference powers.

use std::collections::{BTreeMap, HashSet};

use crate::coeff::{shift_coeff_by, RationalFunction};
use crate::division::{DifferencePower, DivisionKind, JanetTree};
use crate::error::{Error, Result};
use crate::linpoly::{plain_reduce, reduce_by, LinearPoly, Reduction, ReductionStep};
use crate::ring::{term_divides, ExponentVector, Ring, ShiftDirection, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    pub division: DivisionKind,
    /// Skip prolongations whose ancestors already account for them.
    pub criteria: bool,
    /// Record how every basis element is built from the inputs.
    pub track_cofactors: bool,
    /// Record a [`TraceEvent`] log.
    pub trace: bool,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        CompletionOptions { division: DivisionKind::JanetLike, criteria: true, track_cofactors: false, trace: false }
    }
}

impl CompletionOptions {
    pub fn with_division(division: DivisionKind) -> Self {
        CompletionOptions { division, ..Self::default() }
    }
}

/// A combination `Σ c·θ^β∘F[i]` of the completion inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cofactors {
    entries: BTreeMap<(usize, ExponentVector), RationalFunction>,
}

impl Cofactors {
    pub fn input(index: usize, n: usize, coefficient: RationalFunction) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((index, ExponentVector::zeros(n)), coefficient);
        Cofactors { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &ExponentVector, &RationalFunction)> {
        self.entries.iter().map(|((i, b), c)| (*i, b, c))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        Cofactors { entries: self.entries.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    pub fn shifted(&self, beta: &ExponentVector, dir: ShiftDirection) -> Self {
        Cofactors {
            entries: self
                .entries
                .iter()
                .map(|((i, b), c)| ((*i, b.add(beta)), shift_coeff_by(beta, c, dir)))
                .collect(),
        }
    }

    /// `self − c·θ^β∘other`.
    pub fn sub_scaled_shifted(&mut self, c: &RationalFunction, beta: &ExponentVector, other: &Cofactors, dir: ShiftDirection) {
        for ((i, b), a) in &other.entries {
            let key = (*i, b.add(beta));
            let delta = shift_coeff_by(beta, a, dir).mul(c);
            let slot = self.entries.entry(key.clone()).or_default();
            *slot = slot.sub(&delta);
            if slot.is_zero() {
                self.entries.remove(&key);
            }
        }
    }

    /// Expands the combination against the inputs.
    pub fn expand(&self, inputs: &[LinearPoly], ring: &Ring) -> LinearPoly {
        let mut acc = LinearPoly::zero();
        for ((i, beta), c) in &self.entries {
            acc = acc.add(&inputs[*i].shifted(beta, ring).scale(c), ring);
        }
        acc
    }
}

/// Events of the optional completion log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEvent {
    Selected { lm: Term, prolongation: bool },
    CriterionSkip { lm: Term },
    Reduced { from: Term, steps: usize, to: Option<Term> },
    Displaced { lm: Term },
    Inserted { lm: Term },
    Certification { violations: usize },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub selections: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
    pub criteria_skips: usize,
    pub prolongations: usize,
    pub displacements: usize,
    pub certification_rounds: usize,
}

#[derive(Debug, Clone)]
struct Element {
    poly: LinearPoly,
    ancestor: Term,
    cofactors: Option<Cofactors>,
}

#[derive(Debug)]
struct Pending {
    elem: Element,
    seq: u64,
    prolongation: bool,
    certify: bool,
}

struct Completion<'r> {
    ring: &'r Ring,
    opts: CompletionOptions,
    slots: Vec<Option<Element>>,
    tree: JanetTree,
    queue: Vec<Pending>,
    seq: u64,
    prolonged: HashSet<(usize, DifferencePower)>,
    trace: Vec<TraceEvent>,
    stats: CompletionStats,
}

impl<'r> Completion<'r> {
    fn new(ring: &'r Ring, opts: CompletionOptions) -> Self {
        Completion {
            ring,
            opts,
            slots: Vec::new(),
            tree: JanetTree::new(ring.ranking(), opts.division),
            queue: Vec::new(),
            seq: 0,
            prolonged: HashSet::new(),
            trace: Vec::new(),
            stats: CompletionStats::default(),
        }
    }

    fn log(&mut self, event: TraceEvent) {
        if self.opts.trace {
            self.trace.push(event);
        }
    }

    fn push(&mut self, elem: Element, prolongation: bool, certify: bool) {
        self.seq += 1;
        self.queue.push(Pending { elem, seq: self.seq, prolongation, certify });
    }

    /// Lowest leading term first; FIFO among equal leading terms.
    fn pop_lowest(&mut self) -> Option<Pending> {
        let ring = self.ring;
        let best = (0..self.queue.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.queue[a], &self.queue[b]);
            ring.cmp_terms(pa.elem.poly.lm().unwrap(), pb.elem.poly.lm().unwrap())
                .then(pa.seq.cmp(&pb.seq))
        })?;
        Some(self.queue.swap_remove(best))
    }

    fn element(&self, id: usize) -> &Element {
        self.slots[id].as_ref().expect("tree ids point at live elements")
    }

    /// Ancestor criterion: the prolongation is redundant when the lcm of its
    /// ancestor and its reductor's ancestor is a proper divisor of its head.
    fn criterion_applies(&self, p: &Pending) -> bool {
        let lm = p.elem.poly.lm().unwrap();
        let Some((id, _)) = self.tree.j_reductor(lm) else {
            return false;
        };
        let other = &self.element(id).ancestor;
        let anc = &p.elem.ancestor;
        if anc.func != lm.func || other.func != lm.func {
            return false;
        }
        let lcm = anc.shift.lcm(&other.shift);
        lcm != lm.shift && lcm.divides(&lm.shift)
    }

    fn normal_form(&self, elem: &Element) -> (LinearPoly, Vec<ReductionStep>) {
        let mut steps = Vec::new();
        let slots = &self.slots;
        let h = reduce_by(
            elem.poly.clone(),
            self.ring,
            false,
            |t| {
                self.tree.j_reductor(t).map(|(id, beta)| {
                    let g = &slots[id].as_ref().expect("live element").poly;
                    (id, beta, g)
                })
            },
            Some(&mut steps),
        );
        (h, steps)
    }

    fn process(&mut self, p: Pending) -> Option<Element> {
        self.stats.selections += 1;
        let lm = p.elem.poly.lm().unwrap().clone();
        self.log(TraceEvent::Selected { lm: lm.clone(), prolongation: p.prolongation });
        if self.opts.criteria && p.prolongation && !p.certify && self.criterion_applies(&p) {
            self.stats.criteria_skips += 1;
            self.log(TraceEvent::CriterionSkip { lm });
            return None;
        }
        let (h, steps) = self.normal_form(&p.elem);
        self.stats.reductions += steps.len();
        self.log(TraceEvent::Reduced { from: lm.clone(), steps: steps.len(), to: h.lm().cloned() });
        if h.is_zero() {
            self.stats.zero_reductions += 1;
            return None;
        }
        let dir = self.ring.direction();
        let cofactors = p.elem.cofactors.map(|mut cof| {
            for s in &steps {
                let g = self.element(s.generator).cofactors.as_ref().expect("cofactors tracked everywhere");
                cof.sub_scaled_shifted(&s.multiplier, &s.shift, g, dir);
            }
            cof
        });
        let lc_inv = h.lc().unwrap().inv().expect("nonzero");
        let monic = h.scale(&lc_inv);
        let ancestor = if monic.lm() == Some(&lm) { p.elem.ancestor } else { monic.lm().unwrap().clone() };
        Some(Element { poly: monic, ancestor, cofactors: cofactors.map(|c| c.scale(&lc_inv)) })
    }

    fn insert(&mut self, h: Element) -> Result<()> {
        let lm_h = h.poly.lm().unwrap().clone();
        let displaced: Vec<(Term, usize)> = self
            .tree
            .entries()
            .into_iter()
            .filter(|(lm_g, _)| *lm_g != lm_h && term_divides(&lm_h, lm_g).is_some())
            .collect();
        for (lm_g, id) in displaced {
            self.tree.remove(&lm_g);
            let g = self.slots[id].take().expect("live element");
            self.stats.displacements += 1;
            self.log(TraceEvent::Displaced { lm: lm_g });
            self.push(g, false, false);
        }
        let id = self.slots.len();
        self.tree.insert(&lm_h, id)?;
        self.slots.push(Some(h));
        self.log(TraceEvent::Inserted { lm: lm_h });

        let n = self.ring.n();
        for (lm_g, gid) in self.tree.entries() {
            for dp in self.tree.difference_powers(&lm_g) {
                if self.prolonged.insert((gid, dp)) {
                    let elem = self.prolongation(gid, &dp.exponent(n));
                    self.stats.prolongations += 1;
                    self.push(elem, true, false);
                }
            }
        }
        Ok(())
    }

    fn prolongation(&self, id: usize, beta: &ExponentVector) -> Element {
        let g = self.element(id);
        Element {
            poly: g.poly.shifted(beta, self.ring),
            ancestor: g.ancestor.clone(),
            cofactors: g.cofactors.as_ref().map(|c| c.shifted(beta, self.ring.direction())),
        }
    }

    /// Re-checks every prolongation of the current basis; returns the number
    /// of violations pushed back onto the queue.
    fn certify(&mut self) -> usize {
        self.stats.certification_rounds += 1;
        let n = self.ring.n();
        let mut violations = Vec::new();
        for (lm_g, gid) in self.tree.entries() {
            for dp in self.tree.difference_powers(&lm_g) {
                let elem = self.prolongation(gid, &dp.exponent(n));
                let (h, _) = self.normal_form(&elem);
                if !h.is_zero() {
                    violations.push(elem);
                }
            }
        }
        let count = violations.len();
        for elem in violations {
            self.push(elem, true, true);
        }
        self.log(TraceEvent::Certification { violations: count });
        count
    }

    fn run(&mut self) -> Result<()> {
        loop {
            while let Some(p) = self.pop_lowest() {
                if let Some(h) = self.process(p) {
                    self.insert(h)?;
                }
            }
            if self.certify() == 0 {
                return Ok(());
            }
        }
    }
}

/// A completed minimal Janet(-like) basis.
#[derive(Debug, Clone)]
pub struct JanetBasis {
    ring: Ring,
    kind: DivisionKind,
    elements: Vec<LinearPoly>,
    powers: Vec<Vec<DifferencePower>>,
    tree: JanetTree,
    inputs: Vec<LinearPoly>,
    cofactors: Option<Vec<Cofactors>>,
    trace: Vec<TraceEvent>,
    stats: CompletionStats,
}

impl JanetBasis {
    /// Builds the basis structure over an already completed set of
    /// polynomials with pairwise distinct leading terms.
    pub fn from_completed(polys: Vec<LinearPoly>, ring: &Ring, kind: DivisionKind) -> Result<Self> {
        let mut elements: Vec<LinearPoly> = polys.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
        elements.sort_by(|a, b| ring.cmp_terms(b.lm().unwrap(), a.lm().unwrap()));
        let mut tree = JanetTree::new(ring.ranking(), kind);
        for (i, p) in elements.iter().enumerate() {
            tree.insert(p.lm().unwrap(), i)?;
        }
        let powers = elements.iter().map(|p| tree.difference_powers(p.lm().unwrap())).collect();
        Ok(JanetBasis {
            ring: ring.clone(),
            kind,
            elements,
            powers,
            tree,
            inputs: Vec::new(),
            cofactors: None,
            trace: Vec::new(),
            stats: CompletionStats::default(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn kind(&self) -> DivisionKind {
        self.kind
    }

    /// Monic basis elements, sorted by leading term, highest first.
    pub fn polys(&self) -> &[LinearPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements.iter().map(|p| p.lm().unwrap().clone()).collect()
    }

    pub fn difference_powers(&self, i: usize) -> &[DifferencePower] {
        &self.powers[i]
    }

    pub fn tree(&self) -> &JanetTree {
        &self.tree
    }

    /// The inputs the basis was completed from.
    pub fn inputs(&self) -> &[LinearPoly] {
        &self.inputs
    }

    /// Representation of element `i` in terms of the inputs, when tracked.
    pub fn cofactors(&self, i: usize) -> Option<&Cofactors> {
        self.cofactors.as_ref().map(|c| &c[i])
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn stats(&self) -> CompletionStats {
        self.stats
    }

    /// The unique basis element J-dividing `t`, with the shift.
    pub fn j_reductor(&self, t: &Term) -> Option<(usize, ExponentVector)> {
        self.tree.j_reductor(t)
    }

    pub fn normal_form(&self, p: &LinearPoly) -> LinearPoly {
        j_normal_form(p, self)
    }

    /// J-normal form with the reduction steps:
    /// `p = remainder + Σ multiplier·θ^shift∘polys()[generator]`.
    pub fn normal_form_traced(&self, p: &LinearPoly) -> Reduction {
        let mut steps = Vec::new();
        let remainder = reduce_by(
            p.clone(),
            &self.ring,
            false,
            |t| self.tree.j_reductor(t).map(|(id, beta)| (id, beta, &self.elements[id])),
            Some(&mut steps),
        );
        Reduction { remainder, steps }
    }

    /// `(element, difference power)` pairs with `NF_J(θ^s∘g, G) ≠ 0`.
    pub fn characterization_violations(&self) -> Vec<(usize, DifferencePower)> {
        let n = self.ring.n();
        let mut out = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            for dp in &self.powers[i] {
                if !self.normal_form(&g.shifted(&dp.exponent(n), &self.ring)).is_zero() {
                    out.push((i, *dp));
                }
            }
        }
        out
    }
}

/// Minimal Janet-like (or Janet, per `opts`) basis of `Id(F)`, monic.
pub fn janet_like_basis(f: &[LinearPoly], ring: &Ring, opts: CompletionOptions) -> Result<JanetBasis> {
    if f.iter().all(LinearPoly::is_zero) {
        return Err(Error::InvalidInput("cannot complete an empty or all-zero generating set".into()));
    }
    let inputs: Vec<LinearPoly> = f.iter().map(|p| p.resorted(ring)).collect();
    let mut completion = Completion::new(ring, opts);
    let n = ring.n();
    for (i, p) in inputs.iter().enumerate() {
        let Some(lc) = p.lc() else { continue };
        let lc_inv = lc.inv()?;
        let elem = Element {
            poly: p.scale(&lc_inv),
            ancestor: p.lm().unwrap().clone(),
            cofactors: opts.track_cofactors.then(|| Cofactors::input(i, n, lc_inv.clone())),
        };
        completion.push(elem, false, false);
    }
    completion.run()?;

    let Completion { slots, trace, stats, .. } = completion;
    let mut live: Vec<Element> = slots.into_iter().flatten().collect();
    live.sort_by(|a, b| ring.cmp_terms(b.poly.lm().unwrap(), a.poly.lm().unwrap()));
    let cofactors = opts.track_cofactors.then(|| live.iter().map(|e| e.cofactors.clone().unwrap()).collect());
    let mut basis = JanetBasis::from_completed(live.into_iter().map(|e| e.poly).collect(), ring, opts.division)?;
    basis.inputs = inputs;
    basis.cofactors = cofactors;
    basis.trace = trace;
    basis.stats = stats;
    Ok(basis)
}

/// `NF_J(p, G)`: no term of the result is J-reducible modulo the basis.
pub fn j_normal_form(p: &LinearPoly, basis: &JanetBasis) -> LinearPoly {
    reduce_by(
        p.resorted(&basis.ring),
        &basis.ring,
        false,
        |t| basis.tree.j_reductor(t).map(|(id, beta)| (id, beta, &basis.elements[id])),
        None,
    )
}

/// Minimizes and tail-reduces a Gröbner basis; output monic, highest lm first.
pub fn reduce_groebner(polys: &[LinearPoly], ring: &Ring) -> Vec<LinearPoly> {
    let polys: Vec<LinearPoly> = polys.iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    let mut minimal: Vec<LinearPoly> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let lm = p.lm().unwrap();
        let redundant = polys.iter().enumerate().any(|(j, q)| {
            let lq = q.lm().unwrap();
            // among equal leading terms keep the first occurrence
            j != i && term_divides(lq, lm).is_some() && (lq != lm || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<LinearPoly> = (0..minimal.len())
        .map(|i| {
            let others: Vec<LinearPoly> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            plain_reduce(&minimal[i], &others, ring, false).monic()
        })
        .collect();
    out.sort_by(|a, b| ring.cmp_terms(b.lm().unwrap(), a.lm().unwrap()));
    out
}

/// The reduced Gröbner basis contained in a completed Janet(-like) basis.
pub fn extract_reduced_gb(basis: &JanetBasis) -> Vec<LinearPoly> {
    reduce_groebner(basis.polys(), basis.ring())
}

fn s_polynomial(p: &LinearPoly, q: &LinearPoly, ring: &Ring) -> Option<LinearPoly> {
    let (a, b) = (p.lm()?, q.lm()?);
    if a.func != b.func {
        return None;
    }
    let lcm = a.shift.lcm(&b.shift);
    let pa = p.shifted(&lcm.checked_sub(&a.shift).unwrap(), ring);
    let qb = q.shifted(&lcm.checked_sub(&b.shift).unwrap(), ring);
    Some(pa.scale(&pa.lc()?.inv().ok()?).sub(&qb.scale(&qb.lc()?.inv().ok()?), ring))
}

/// Reduced Gröbner basis by naive pairwise completion with plain reduction.
/// Independent of the involutive machinery; meant for cross-checking at
/// test scale.
pub fn buchberger_oracle(f: &[LinearPoly], ring: &Ring) -> Vec<LinearPoly> {
    let mut g: Vec<LinearPoly> = f.iter().filter(|p| !p.is_zero()).map(|p| p.resorted(ring).monic()).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    // normal selection strategy: the pair with the lowest lcm goes first
    let lcm_term = |g: &[LinearPoly], (i, j): (usize, usize)| -> Term {
        let (a, b) = (g[i].lm().unwrap(), g[j].lm().unwrap());
        Term::new(a.func.max(b.func), a.shift.lcm(&b.shift))
    };
    while !pairs.is_empty() {
        let next = (0..pairs.len())
            .min_by(|&x, &y| ring.cmp_terms(&lcm_term(&g, pairs[x]), &lcm_term(&g, pairs[y])))
            .unwrap();
        let (i, j) = pairs.swap_remove(next);
        let Some(s) = s_polynomial(&g[i], &g[j], ring) else { continue };
        let r = plain_reduce(&s, &g, ring, false);
        if !r.is_zero() {
            g.push(r.monic());
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    reduce_groebner(&g, ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Priority, Ranking, RingSignature};

    fn ring_xy() -> Ring {
        Ring::with_default_ranking(RingSignature::new(&["x", "y"], &["u"], &[]).unwrap())
    }

    fn poly(ring: &Ring, terms: &[(&[u32], i64)]) -> LinearPoly {
        LinearPoly::from_terms(ring, terms.iter().map(|(s, c)| (ring.term(0, s), RationalFunction::from_int(*c))))
    }

    fn telescoping(ring: &Ring) -> Vec<LinearPoly> {
        vec![poly(ring, &[(&[1, 0], 1), (&[0, 0], -1)]), poly(ring, &[(&[0, 1], 1), (&[0, 0], -1)])]
    }

    #[test]
    fn single_generator_is_made_monic() {
        let r = ring_xy();
        let p = poly(&r, &[(&[2, 1], 3), (&[0, 0], 6)]);
        let basis = janet_like_basis(std::slice::from_ref(&p), &r, CompletionOptions::default()).unwrap();
        assert_eq!(basis.polys(), &[p.monic()]);
        assert!(basis.difference_powers(0).is_empty());
    }

    #[test]
    fn telescoping_pair() {
        let r = ring_xy();
        let f = telescoping(&r);
        let basis = janet_like_basis(&f, &r, CompletionOptions::default()).unwrap();
        assert_eq!(basis.len(), 2);
        let mut expected = f.clone();
        expected.sort_by(|a, b| r.cmp_terms(b.lm().unwrap(), a.lm().unwrap()));
        assert_eq!(basis.polys(), expected.as_slice());
        assert!(basis.characterization_violations().is_empty());
        let target = poly(&r, &[(&[2, 3], 1)]);
        let nf = j_normal_form(&target, &basis);
        assert_eq!(nf, poly(&r, &[(&[0, 0], 1)]));
        assert_eq!(nf, plain_reduce(&target, basis.polys(), &r, false));
        assert_eq!(extract_reduced_gb(&basis), expected);
    }

    #[test]
    fn empty_input_is_an_error() {
        let r = ring_xy();
        assert!(janet_like_basis(&[], &r, CompletionOptions::default()).is_err());
        assert!(janet_like_basis(&[LinearPoly::zero()], &r, CompletionOptions::default()).is_err());
    }

    #[test]
    fn cofactors_expand_to_elements() {
        let r = ring_xy();
        let f = vec![
            poly(&r, &[(&[2, 0], 1), (&[0, 1], 2), (&[0, 0], -1)]),
            poly(&r, &[(&[1, 1], 3), (&[1, 0], 1)]),
        ];
        let opts = CompletionOptions { track_cofactors: true, ..Default::default() };
        let basis = janet_like_basis(&f, &r, opts).unwrap();
        for (i, g) in basis.polys().iter().enumerate() {
            assert_eq!(&basis.cofactors(i).unwrap().expand(basis.inputs(), &r), g);
        }
    }

    #[test]
    fn toric_cardinalities() {
        let sig = RingSignature::new(&["x", "y", "z", "w"], &["f"], &[]).unwrap();
        let ranking = Ranking::new(&sig, MonomialOrder::DegRevLex, Priority::TermOverPosition);
        let r = Ring::new(sig, ranking).unwrap();
        let f = vec![
            poly(&r, &[(&[7, 0, 0, 0], 1), (&[0, 2, 1, 0], -1)]),
            poly(&r, &[(&[4, 0, 0, 1], 1), (&[0, 3, 0, 0], -1)]),
            poly(&r, &[(&[3, 1, 0, 0], 1), (&[0, 0, 1, 1], -1)]),
        ];
        let jl = janet_like_basis(&f, &r, CompletionOptions::default()).unwrap();
        let j = janet_like_basis(&f, &r, CompletionOptions::with_division(DivisionKind::Janet)).unwrap();
        assert_eq!(jl.len(), 5);
        assert_eq!(j.len(), 11);
        let gb = extract_reduced_gb(&jl);
        assert_eq!(gb.len(), 4);
        assert_eq!(gb, buchberger_oracle(&f, &r));
        assert_eq!(extract_reduced_gb(&j), gb);
    }
}
