//! Nonlinear difference polynomials: difference monomials, the lexicographic
//! admissible ordering induced by a ranking, S-polynomials and standard
//! bases.

use std::cmp::Ordering;

use crate::coeff::{shift_coeff_by, RationalFunction};
use crate::error::{Error, Result};
use crate::linpoly::LinearPoly;
use crate::ring::{shift_term, ExponentVector, Ring, Term};

pub const DEFAULT_BUDGET: usize = 500;

/// A finite power product of terms. Factors are kept sorted by the ranking,
/// highest first, so every value is tied to the ring it was built in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DifferenceMonomial {
    factors: Vec<(Term, u32)>,
}

impl DifferenceMonomial {
    pub fn one() -> Self {
        DifferenceMonomial { factors: Vec::new() }
    }

    pub fn from_term(t: Term) -> Self {
        DifferenceMonomial { factors: vec![(t, 1)] }
    }

    pub fn from_factors(ring: &Ring, factors: impl IntoIterator<Item = (Term, u32)>) -> Self {
        let mut out = Self::one();
        for (t, p) in factors {
            if p > 0 {
                out = out.mul(&DifferenceMonomial { factors: vec![(t, p)] }, ring);
            }
        }
        out
    }

    pub fn factors(&self) -> &[(Term, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, p)| p).sum()
    }

    /// The single term of a degree-one monomial.
    pub fn as_term(&self) -> Option<&Term> {
        match self.factors.as_slice() {
            [(t, 1)] => Some(t),
            _ => None,
        }
    }

    pub fn power_of(&self, t: &Term) -> u32 {
        self.factors.iter().find(|(s, _)| s == t).map_or(0, |(_, p)| *p)
    }

    pub fn mul(&self, other: &Self, ring: &Ring) -> Self {
        self.merge(other, ring, |a, b| Some(a + b)).expect("multiplication always succeeds")
    }

    /// Commutative quotient `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Self, ring: &Ring) -> Option<Self> {
        if other.factors.iter().any(|(t, p)| self.power_of(t) < *p) {
            return None;
        }
        self.merge(other, ring, |a, b| a.checked_sub(b))
    }

    pub fn lcm(&self, other: &Self, ring: &Ring) -> Self {
        self.merge(other, ring, |a, b| Some(a.max(b))).expect("lcm always succeeds")
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.factors.iter().all(|(t, _)| other.power_of(t) == 0)
    }

    fn merge(&self, other: &Self, ring: &Ring, op: impl Fn(u32, u32) -> Option<u32>) -> Option<Self> {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => ring.cmp_terms(&x.0, &y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            let (t, p) = match ord {
                Ordering::Greater => {
                    i += 1;
                    (a[i - 1].0.clone(), op(a[i - 1].1, 0)?)
                }
                Ordering::Less => {
                    j += 1;
                    (b[j - 1].0.clone(), op(0, b[j - 1].1)?)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a[i - 1].0.clone(), op(a[i - 1].1, b[j - 1].1)?)
                }
            };
            if p > 0 {
                out.push((t, p));
            }
        }
        Some(DifferenceMonomial { factors: out })
    }

    /// `θ^β∘self`. Shifting preserves the ranking, so no re-sorting is needed.
    pub fn shifted(&self, beta: &ExponentVector) -> Self {
        if beta.is_zero() {
            return self.clone();
        }
        DifferenceMonomial { factors: self.factors.iter().map(|(t, p)| (shift_term(beta, t), *p)).collect() }
    }

    /// Componentwise maximum of the shifts of the factors.
    pub fn max_shift(&self, n: usize) -> ExponentVector {
        self.factors.iter().fold(ExponentVector::zeros(n), |acc, (t, _)| acc.lcm(&t.shift))
    }
}

/// The lexicographic monomial ordering compatible with the ranking.
pub fn admissible_compare(a: &DifferenceMonomial, b: &DifferenceMonomial, ring: &Ring) -> Ordering {
    for (x, y) in a.factors.iter().zip(&b.factors) {
        let ord = ring.cmp_terms(&x.0, &y.0).then(x.1.cmp(&y.1));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    a.factors.len().cmp(&b.factors.len())
}

/// Every `(t, θ)` with `w = t·θ∘v`.
pub fn monomial_divides(v: &DifferenceMonomial, w: &DifferenceMonomial, ring: &Ring) -> Vec<(DifferenceMonomial, ExponentVector)> {
    let n = ring.n();
    if v.is_one() {
        return shift_box(&w.max_shift(n)).into_iter().map(|theta| (w.clone(), theta)).collect();
    }
    let mut out: Vec<(DifferenceMonomial, ExponentVector)> = Vec::new();
    for theta in candidate_shifts(v, w) {
        if out.iter().any(|(_, s)| *s == theta) {
            continue;
        }
        if let Some(t) = w.checked_div(&v.shifted(&theta), ring) {
            out.push((t, theta));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1));
    out
}

/// Some witness `(t, θ)` of `v | w`.
pub fn find_witness(v: &DifferenceMonomial, w: &DifferenceMonomial, ring: &Ring) -> Option<(DifferenceMonomial, ExponentVector)> {
    if v.is_one() {
        return Some((w.clone(), ExponentVector::zeros(ring.n())));
    }
    candidate_shifts(v, w).find_map(|theta| w.checked_div(&v.shifted(&theta), ring).map(|t| (t, theta)))
}

/// Shifts aligning the highest factor of `v` with a factor of `w`.
fn candidate_shifts<'a>(v: &'a DifferenceMonomial, w: &'a DifferenceMonomial) -> impl Iterator<Item = ExponentVector> + 'a {
    let first = &v.factors[0].0;
    w.factors
        .iter()
        .filter(move |(t, _)| t.func == first.func)
        .filter_map(move |(t, _)| t.shift.checked_sub(&first.shift))
}

fn shift_box(bound: &ExponentVector) -> Vec<ExponentVector> {
    let mut out = vec![ExponentVector::zeros(bound.len())];
    for i in 0..bound.len() {
        let mut next = Vec::new();
        for e in &out {
            for k in 0..=bound[i] {
                let mut f = e.clone();
                f.set(i, k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

/// A difference polynomial; terms sorted by the admissible ordering, highest first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: Vec<(DifferenceMonomial, RationalFunction)>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: Vec::new() }
    }

    pub fn constant(c: RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: vec![(DifferenceMonomial::one(), c)] }
    }

    pub fn from_monomial(m: DifferenceMonomial, c: RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: vec![(m, c)] }
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (DifferenceMonomial, RationalFunction)>) -> Self {
        let mut v: Vec<(DifferenceMonomial, RationalFunction)> = terms.into_iter().collect();
        v.sort_by(|a, b| admissible_compare(&b.0, &a.0, ring));
        let mut out: Vec<(DifferenceMonomial, RationalFunction)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == m => *acc = acc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        DiffPoly { terms: out }
    }

    pub fn from_linear(p: &LinearPoly) -> Self {
        DiffPoly { terms: p.terms().iter().map(|(t, c)| (DifferenceMonomial::from_term(t.clone()), c.clone())).collect() }
    }

    /// The linear polynomial with the same terms, if every monomial is a single term.
    pub fn to_linear(&self, ring: &Ring) -> Option<LinearPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.as_term()?.clone(), c.clone()));
        }
        Some(LinearPoly::from_terms(ring, terms))
    }

    pub fn terms(&self) -> &[(DifferenceMonomial, RationalFunction)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_linear(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.as_term().is_some())
    }

    pub fn lm(&self) -> Option<&DifferenceMonomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<&RationalFunction> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn resorted(&self, ring: &Ring) -> Self {
        Self::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (DifferenceMonomial::from_factors(ring, m.factors.iter().cloned()), c.clone())),
        )
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.neg())).collect() }
    }

    pub fn add(&self, other: &Self, ring: &Ring) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match admissible_compare(&a[i].0, &b[j].0, ring) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        DiffPoly { terms: out }
    }

    pub fn sub(&self, other: &Self, ring: &Ring) -> Self {
        self.add(&other.neg(), ring)
    }

    pub fn mul(&self, other: &Self, ring: &Ring) -> Self {
        let mut acc = Self::zero();
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_monomial(m, ring).scale(c), ring);
        }
        acc
    }

    /// `t·self`; admissibility keeps the order of the terms.
    pub fn mul_monomial(&self, t: &DifferenceMonomial, ring: &Ring) -> Self {
        if t.is_one() {
            return self.clone();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(t, ring), c.clone())).collect() }
    }

    /// `θ^β∘self`, shifting coefficients as well.
    pub fn shifted(&self, beta: &ExponentVector, ring: &Ring) -> Self {
        if beta.is_zero() {
            return self.clone();
        }
        let dir = ring.direction();
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.shifted(beta), shift_coeff_by(beta, c, dir))).collect() }
    }
}

/// An S-polynomial `m_1·θ_1∘p − m_2·θ_2∘q` with its cofactors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SPolyPair {
    pub p: DiffPoly,
    pub q: DiffPoly,
    pub m1: DifferenceMonomial,
    pub theta1: ExponentVector,
    pub m2: DifferenceMonomial,
    pub theta2: ExponentVector,
    pub spoly: DiffPoly,
}

impl SPolyPair {
    /// Checks the cofactor identity and the coprimality convention.
    pub fn validate(&self, ring: &Ring) -> bool {
        let (Some(a), Some(b)) = (self.p.lm(), self.q.lm()) else {
            return false;
        };
        let lhs = self.m1.mul(&a.shifted(&self.theta1), ring);
        let rhs = self.m2.mul(&b.shifted(&self.theta2), ring);
        let thetas_coprime = self.theta1.iter().zip(self.theta2.iter()).all(|(x, y)| x.min(y) == 0);
        lhs == rhs && self.m1.is_coprime(&self.m2) && thetas_coprime
    }
}

/// S-polynomials of monic `p` and `q` over every alignment of a factor of
/// `lm(p)` with a factor of `lm(q)`. Pairs whose shifted leading monomials
/// share no factor are omitted: they reduce to zero by the product criterion.
pub fn s_polynomials(p: &DiffPoly, q: &DiffPoly, ring: &Ring) -> Vec<SPolyPair> {
    let (Some(a), Some(b)) = (p.lm(), q.lm()) else {
        return Vec::new();
    };
    let same = p == q;
    let mut seen: Vec<(ExponentVector, ExponentVector)> = Vec::new();
    let mut out = Vec::new();
    for (fa, _) in a.factors() {
        for (fb, _) in b.factors() {
            if fa.func != fb.func {
                continue;
            }
            let theta1: ExponentVector = fa.shift.iter().zip(fb.shift.iter()).map(|(x, y)| y.saturating_sub(x)).collect();
            let theta2: ExponentVector = fa.shift.iter().zip(fb.shift.iter()).map(|(x, y)| x.saturating_sub(y)).collect();
            if same && (theta1 == theta2 || seen.contains(&(theta2.clone(), theta1.clone()))) {
                continue;
            }
            if seen.contains(&(theta1.clone(), theta2.clone())) {
                continue;
            }
            seen.push((theta1.clone(), theta2.clone()));
            let sa = a.shifted(&theta1);
            let sb = b.shifted(&theta2);
            let l = sa.lcm(&sb, ring);
            let m1 = l.checked_div(&sa, ring).expect("lcm is a multiple");
            let m2 = l.checked_div(&sb, ring).expect("lcm is a multiple");
            let spoly =
                p.shifted(&theta1, ring).mul_monomial(&m1, ring).sub(&q.shifted(&theta2, ring).mul_monomial(&m2, ring), ring);
            out.push(SPolyPair { p: p.clone(), q: q.clone(), m1, theta1, m2, theta2, spoly });
        }
    }
    out
}

/// Normal form modulo `g`: no monomial of the result is divisible by a
/// leading monomial of `g`. Zero elements of `g` are ignored.
pub fn normal_form(p: &DiffPoly, g: &[DiffPoly], ring: &Ring) -> DiffPoly {
    let mut h = p.clone();
    let mut start = 0;
    'outer: while start < h.terms.len() {
        for k in start..h.terms.len() {
            let w = &h.terms[k].0;
            for r in g.iter().filter(|r| !r.is_zero()) {
                let Some((t, theta)) = find_witness(r.lm().unwrap(), w, ring) else { continue };
                let red = r.shifted(&theta, ring).mul_monomial(&t, ring);
                let factor = h.terms[k].1.div(red.lc().unwrap()).expect("leading coefficient is nonzero");
                let before = h.terms[k].0.clone();
                h = h.sub(&red.scale(&factor), ring);
                debug_assert!(h.terms.iter().all(|(m, _)| m != &before));
                // terms above position k are untouched
                start = k;
                continue 'outer;
            }
        }
        break;
    }
    h
}

/// Mutual reduction until every element is its own normal form modulo
/// the others; zero results are dropped and survivors made monic.
pub fn interreduce(f: &[DiffPoly], ring: &Ring) -> Vec<DiffPoly> {
    let mut g: Vec<DiffPoly> = f.iter().filter(|p| !p.is_zero()).map(|p| p.resorted(ring).monic()).collect();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < g.len() {
            let others: Vec<DiffPoly> = g.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let r = normal_form(&g[i], &others, ring);
            if r.is_zero() {
                g.remove(i);
                changed = true;
                continue;
            }
            let r = r.monic();
            if r != g[i] {
                g[i] = r;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    g.sort_by(|a, b| admissible_compare(b.lm().unwrap(), a.lm().unwrap(), ring));
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompletionStatus {
    Complete,
    BudgetExhausted,
}

impl CompletionStatus {
    pub fn name(self) -> &'static str {
        match self {
            CompletionStatus::Complete => "complete",
            CompletionStatus::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Debug, Clone)]
pub struct StandardBasis {
    pub basis: Vec<DiffPoly>,
    pub status: CompletionStatus,
    pub rounds: usize,
}

/// Buchberger-style completion. Each round reduces the S-polynomials of all
/// pairs involving an element added in the previous round modulo the round's
/// starting set. Runs at most `budget` rounds; on exhaustion the current
/// (not interreduced) set is returned.
pub fn standard_basis(f: &[DiffPoly], ring: &Ring, budget: usize) -> Result<StandardBasis> {
    if budget == 0 {
        return Err(Error::InvalidOption("budget must be positive".into()));
    }
    let mut g: Vec<DiffPoly> = f.iter().filter(|p| !p.is_zero()).map(|p| p.resorted(ring).monic()).collect();
    if g.is_empty() {
        return Err(Error::InvalidInput("cannot complete an empty or all-zero generating set".into()));
    }
    let mut fresh_from = 0;
    let mut rounds = 0;
    while fresh_from < g.len() {
        if rounds == budget {
            return Ok(StandardBasis { basis: g, status: CompletionStatus::BudgetExhausted, rounds });
        }
        rounds += 1;
        let h = g.clone();
        for j in fresh_from..h.len() {
            for i in 0..=j {
                for pair in s_polynomials(&h[i], &h[j], ring) {
                    let r = normal_form(&pair.spoly, &h, ring);
                    if !r.is_zero() && !g[h.len()..].contains(&r.monic()) {
                        g.push(r.monic());
                    }
                }
            }
        }
        fresh_from = h.len();
    }
    Ok(StandardBasis { basis: interreduce(&g, ring), status: CompletionStatus::Complete, rounds })
}
