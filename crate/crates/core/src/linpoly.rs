//! Linear difference polynomials and plain (Gröbner-style) reduction.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeff::{shift_coeff_by, RationalFunction};
use crate::ring::{shift_term, term_divides, ExponentVector, Ring, Term};

/// An element of `R_L`: a finite sum `Σ c·θ^μ∘y^k` with coefficients in K.
///
/// Terms are kept sorted descending under the ring's ranking, so the leading
/// term is the first one. Polynomials built under one ranking must be
/// [`resorted`](LinearPoly::resorted) before use under another.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LinearPoly {
    terms: Vec<(Term, RationalFunction)>,
}

impl LinearPoly {
    pub fn zero() -> Self {
        LinearPoly { terms: Vec::new() }
    }

    pub fn from_term(t: Term) -> Self {
        LinearPoly { terms: vec![(t, RationalFunction::one())] }
    }

    /// Collects terms, combining duplicates and dropping zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Term, RationalFunction)>) -> Self {
        let mut acc: BTreeMap<Term, RationalFunction> = BTreeMap::new();
        for (t, c) in terms {
            let slot = acc.entry(t).or_default();
            *slot = slot.add(&c);
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp_terms(&b.0, &a.0));
        LinearPoly { terms }
    }

    pub fn resorted(&self, ring: &Ring) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp_terms(&b.0, &a.0));
        LinearPoly { terms }
    }

    pub fn terms(&self) -> &[(Term, RationalFunction)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Term> {
        self.terms.first().map(|(t, _)| t)
    }

    pub fn lc(&self) -> Option<&RationalFunction> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn coefficient(&self, t: &Term) -> Option<&RationalFunction> {
        self.terms.iter().find(|(s, _)| s == t).map(|(_, c)| c)
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_none_or(RationalFunction::is_one)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.inv().expect("stored coefficients are nonzero");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinearPoly { terms: self.terms.iter().map(|(t, a)| (t.clone(), a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        LinearPoly { terms: self.terms.iter().map(|(t, a)| (t.clone(), a.neg())).collect() }
    }

    /// Functions (indeterminate positions) occurring with nonzero coefficient.
    pub fn functions(&self) -> impl Iterator<Item = usize> + '_ {
        let mut seen: Vec<usize> = self.terms.iter().map(|(t, _)| t.func).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.into_iter()
    }

    pub fn add(&self, other: &Self, ring: &Ring) -> Self {
        merge(ring, &self.terms, other.terms.iter().cloned())
    }

    pub fn sub(&self, other: &Self, ring: &Ring) -> Self {
        merge(ring, &self.terms, other.terms.iter().map(|(t, c)| (t.clone(), c.neg())))
    }

    /// `θ^β∘self`: shifts terms and coefficients alike. Ranking order is
    /// preserved by shifting, so no re-sort is needed.
    pub fn shifted(&self, beta: &ExponentVector, ring: &Ring) -> Self {
        if beta.is_zero() {
            return self.clone();
        }
        let dir = ring.direction();
        LinearPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (shift_term(beta, t), shift_coeff_by(beta, c, dir)))
                .collect(),
        }
    }

    /// `self − c·θ^β∘g`.
    pub fn sub_scaled_shifted(&self, c: &RationalFunction, beta: &ExponentVector, g: &LinearPoly, ring: &Ring) -> Self {
        let dir = ring.direction();
        let minus_c = c.neg();
        let shifted = g
            .terms
            .iter()
            .map(|(t, a)| (shift_term(beta, t), shift_coeff_by(beta, a, dir).mul(&minus_c)));
        merge(ring, &self.terms, shifted)
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&RationalFunction) -> RationalFunction) -> Self {
        LinearPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Drops every term for which `erase` holds.
    pub fn without_terms(&self, mut erase: impl FnMut(&Term) -> bool) -> Self {
        LinearPoly { terms: self.terms.iter().filter(|(t, _)| !erase(t)).cloned().collect() }
    }
}

fn merge(
    ring: &Ring,
    a: &[(Term, RationalFunction)],
    b: impl Iterator<Item = (Term, RationalFunction)>,
) -> LinearPoly {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut a = a.iter().peekable();
    let mut b = b.peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some((ta, _)), Some((tb, _))) => match ring.cmp_terms(ta, tb) {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (t, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let c = ca.add(&cb);
                    if !c.is_zero() {
                        out.push((t.clone(), c));
                    }
                }
            },
            (Some(_), None) => {
                out.extend(a.cloned());
                break;
            }
            (None, Some(_)) => {
                out.extend(b);
                break;
            }
            (None, None) => break,
        }
    }
    LinearPoly { terms: out }
}

/// `θ^β∘p`.
pub fn apply_shift(beta: &ExponentVector, p: &LinearPoly, ring: &Ring) -> LinearPoly {
    p.shifted(beta, ring)
}

/// One elementary reduction `h ← h − multiplier·θ^shift∘G[generator]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub generator: usize,
    pub multiplier: RationalFunction,
    pub shift: ExponentVector,
}

/// Result of a traced reduction: `input = remainder + Σ multiplier·θ^shift∘G[generator]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: LinearPoly,
    pub steps: Vec<ReductionStep>,
}

/// Reduces `h` highest-term-first, asking `find` for a reductor of each term.
pub(crate) fn reduce_by<'g>(
    mut h: LinearPoly,
    ring: &Ring,
    head_only: bool,
    mut find: impl FnMut(&Term) -> Option<(usize, ExponentVector, &'g LinearPoly)>,
    mut trace: Option<&mut Vec<ReductionStep>>,
) -> LinearPoly {
    let dir = ring.direction();
    let mut pos = 0;
    while pos < h.terms.len() {
        let (t, b) = &h.terms[pos];
        match find(t) {
            Some((index, beta, g)) => {
                let lc = shift_coeff_by(&beta, g.lc().expect("reductors are nonzero"), dir);
                let multiplier = b.div(&lc).expect("leading coefficients are nonzero");
                let reduced = t.clone();
                h = h.sub_scaled_shifted(&multiplier, &beta, g, ring);
                debug_assert!(h
                    .terms
                    .get(pos)
                    .is_none_or(|(next, _)| ring.cmp_terms(next, &reduced) == Ordering::Less));
                if let Some(trace) = trace.as_deref_mut() {
                    trace.push(ReductionStep { generator: index, multiplier, shift: beta });
                }
            }
            None if head_only => break,
            None => pos += 1,
        }
    }
    h
}

fn plain_reductor<'g>(t: &Term, generators: &'g [LinearPoly]) -> Option<(usize, ExponentVector, &'g LinearPoly)> {
    generators.iter().enumerate().find_map(|(i, g)| {
        let lm = g.lm()?;
        term_divides(lm, t).map(|beta| (i, beta, g))
    })
}

/// Reduces `f` modulo `generators` with unrestricted θ-divisibility.
///
/// With `head_only` the loop stops at the first irreducible leading term;
/// otherwise every term of the result is irreducible.
pub fn plain_reduce(f: &LinearPoly, generators: &[LinearPoly], ring: &Ring, head_only: bool) -> LinearPoly {
    reduce_by(f.clone(), ring, head_only, |t| plain_reductor(t, generators), None)
}

pub fn plain_reduce_traced(f: &LinearPoly, generators: &[LinearPoly], ring: &Ring, head_only: bool) -> Reduction {
    let mut steps = Vec::new();
    let remainder = reduce_by(f.clone(), ring, head_only, |t| plain_reductor(t, generators), Some(&mut steps));
    Reduction { remainder, steps }
}

/// `Σ multiplier·θ^shift∘G[generator]` over the steps of a trace.
pub fn expand_trace(steps: &[ReductionStep], generators: &[LinearPoly], ring: &Ring) -> LinearPoly {
    let mut acc = LinearPoly::zero();
    for s in steps {
        let part = generators[s.generator].shifted(&s.shift, ring).scale(&s.multiplier);
        acc = acc.add(&part, ring);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{MonomialOrder, Priority, Ranking, RingSignature};

    fn ring_xy() -> Ring {
        Ring::with_default_ranking(RingSignature::new(&["x", "y"], &["u"], &[]).unwrap())
    }

    fn ring_kn() -> Ring {
        let sig = RingSignature::new(&["k", "n"], &["f"], &["d"]).unwrap();
        let r = Ranking::new(&sig, MonomialOrder::DegRevLex, Priority::TermOverPosition);
        Ring::new(sig, r).unwrap()
    }

    fn u(ring: &Ring, x: u32, y: u32) -> Term {
        ring.term(0, &[x, y])
    }

    fn poly(ring: &Ring, terms: &[(Term, i64)]) -> LinearPoly {
        LinearPoly::from_terms(ring, terms.iter().map(|(t, c)| (t.clone(), RationalFunction::from_int(*c))))
    }

    #[test]
    fn terms_sorted_and_combined() {
        let r = ring_xy();
        let p = poly(&r, &[(u(&r, 0, 0), 2), (u(&r, 1, 0), 1), (u(&r, 0, 0), -2)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.lm(), Some(&u(&r, 1, 0)));
        let q = poly(&r, &[(u(&r, 0, 0), 1), (u(&r, 0, 2), 3), (u(&r, 1, 0), 1)]);
        assert_eq!(q.lm(), Some(&u(&r, 0, 2)));
        assert_eq!(q.monic().lc(), Some(&RationalFunction::one()));
    }

    #[test]
    fn shift_moves_coefficients() {
        let r = ring_kn();
        // (n+1)*f[k,n] shifted by (0,1) is (n+2)*f[k,n+1]
        let n = RationalFunction::var(1);
        let p = LinearPoly::from_terms(&r, [(r.term(0, &[0, 0]), n.add(&1.into()))]);
        let shifted = apply_shift(&ExponentVector::from_slice(&[0, 1]), &p, &r);
        let expected = LinearPoly::from_terms(&r, [(r.term(0, &[0, 1]), n.add(&2.into()))]);
        assert_eq!(shifted, expected);
        assert_eq!(apply_shift(&ExponentVector::zeros(2), &p, &r), p);
        // the parameter d is left alone
        let d = RationalFunction::var(2);
        let pd = LinearPoly::from_terms(&r, [(r.term(0, &[0, 0]), d.clone())]);
        assert_eq!(pd.shifted(&ExponentVector::from_slice(&[2, 3]), &r).lc(), Some(&d));
    }

    #[test]
    fn telescoping_reduction() {
        let r = ring_xy();
        let g = poly(&r, &[(u(&r, 1, 0), 1), (u(&r, 0, 0), -1)]);
        let f = poly(&r, &[(u(&r, 3, 0), 1)]);
        let out = plain_reduce(&f, std::slice::from_ref(&g), &r, false);
        assert_eq!(out, poly(&r, &[(u(&r, 0, 0), 1)]));
        // oracle: repeated single head steps
        let mut h = f.clone();
        for _ in 0..3 {
            h = plain_reduce(&h, std::slice::from_ref(&g), &r, true);
            if h.lm() == Some(&u(&r, 0, 0)) {
                break;
            }
        }
        assert_eq!(h, out);
    }

    #[test]
    fn self_reduction_and_irreducible_head() {
        let r = ring_xy();
        let g = poly(&r, &[(u(&r, 1, 1), 1), (u(&r, 0, 0), 5)]);
        assert!(plain_reduce(&g, std::slice::from_ref(&g), &r, false).is_zero());
        let f = poly(&r, &[(u(&r, 0, 3), 1), (u(&r, 1, 1), 1)]);
        let out = plain_reduce(&f, std::slice::from_ref(&g), &r, true);
        assert_eq!(out, f);
        let full = plain_reduce(&f, std::slice::from_ref(&g), &r, false);
        assert_eq!(full, poly(&r, &[(u(&r, 0, 3), 1), (u(&r, 0, 0), -5)]));
    }

    #[test]
    fn trace_re_expands() {
        let r = ring_kn();
        let n = RationalFunction::var(1);
        let d = RationalFunction::var(2);
        let g = LinearPoly::from_terms(
            &r,
            [
                (r.term(0, &[0, 1]), n.add(&1.into())),
                (r.term(0, &[0, 0]), d.sub(&n.mul(&2.into())).neg()),
            ],
        );
        let f = LinearPoly::from_terms(&r, [(r.term(0, &[1, 3]), RationalFunction::one())]);
        let red = plain_reduce_traced(&f, std::slice::from_ref(&g), &r, false);
        assert_eq!(red.remainder.lm(), Some(&r.term(0, &[1, 0])));
        let recombined = red.remainder.add(&expand_trace(&red.steps, std::slice::from_ref(&g), &r), &r);
        assert_eq!(recombined, f);
    }
}
