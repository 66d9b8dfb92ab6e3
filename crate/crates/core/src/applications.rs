//! Compatibility conditions, residue-class bases, Hilbert series and extra
//! quotient relations on top of completed bases.

use std::fmt;

use crate::coeff::{shift_coeff_by, RationalFunction};
use crate::division::DivisionKind;
use crate::engine::{extract_reduced_gb, janet_like_basis, CompletionOptions, JanetBasis};
use crate::error::{Error, Result};
use crate::linpoly::LinearPoly;
use crate::ring::{ExponentVector, Priority, Ranking, Ring, ShiftDirection, Term};

/// Compatibility conditions of an inhomogeneous system, living in the ring
/// extended by the right-hand-side functions.
#[derive(Debug, Clone)]
pub struct CompatibilityConditions {
    pub ring: Ring,
    pub conditions: Vec<LinearPoly>,
}

/// Conditions on the right-hand sides of `lhs_i = r_i`. The tags are
/// adjoined as new functions ranked below the original ones in a
/// position-over-term ranking; basis elements free of the original
/// functions are returned.
pub fn comp_cond(system: &[(LinearPoly, String)], ring: &Ring, division: DivisionKind) -> Result<CompatibilityConditions> {
    let m = ring.m();
    let tags: Vec<&str> = system.iter().map(|(_, t)| t.as_str()).collect();
    let sig = ring.signature().with_extra_functions(&tags)?;
    let old = ring.ranking();
    let function_order: Vec<usize> = old.function_order().iter().copied().chain(m..m + tags.len()).collect();
    let ranking = Ranking::with_orders(old.order(), Priority::PositionOverTerm, function_order, old.index_order().to_vec())?;
    let aug = Ring::new(sig, ranking)?;
    if system.is_empty() {
        return Ok(CompatibilityConditions { ring: aug, conditions: Vec::new() });
    }
    let n = ring.n();
    let eqs: Vec<LinearPoly> = system
        .iter()
        .enumerate()
        .map(|(i, (lhs, _))| {
            let r = LinearPoly::from_term(Term::unshifted(m + i, n));
            lhs.resorted(&aug).sub(&r, &aug)
        })
        .collect();
    let basis = janet_like_basis(&eqs, &aug, CompletionOptions::with_division(division))?;
    let conditions = extract_reduced_gb(&basis)
        .into_iter()
        .filter(|p| p.terms().iter().all(|(t, _)| t.func >= m))
        .collect();
    Ok(CompatibilityConditions { ring: aug, conditions })
}

/// `Σ c·θ^μ∘values[f]` for concrete function values given as elements of
/// the coefficient field.
pub fn substitute_functions(p: &LinearPoly, values: &[RationalFunction], direction: ShiftDirection) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    for (t, c) in p.terms() {
        acc = acc.add(&c.mul(&shift_coeff_by(&t.shift, &values[t.func], direction)));
    }
    acc
}

/// `{θ^β∘root : β supported on multiplicative}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    pub root: Term,
    pub multiplicative: Vec<usize>,
}

impl Cone {
    pub fn contains(&self, t: &Term) -> bool {
        t.func == self.root.func
            && t.shift.iter().zip(self.root.shift.iter()).enumerate().all(|(i, (a, r))| {
                if self.multiplicative.contains(&i) {
                    a >= r
                } else {
                    a == r
                }
            })
    }

    /// Number of members with shift degree `d`.
    pub fn count_degree(&self, d: u64) -> u64 {
        let base = self.root.shift.degree();
        if d < base {
            return 0;
        }
        let k = self.multiplicative.len() as u64;
        if k == 0 {
            return u64::from(d == base);
        }
        binomial(d - base + k - 1, k - 1)
    }

    fn members_of_degree(&self, d: u64, out: &mut Vec<Term>) {
        let base = self.root.shift.degree();
        if d < base {
            return;
        }
        let mut extra = vec![0u32; self.multiplicative.len()];
        distribute(&mut extra, 0, (d - base) as u32, &mut |e| {
            let mut shift = self.root.shift.clone();
            for (slot, &i) in self.multiplicative.iter().enumerate() {
                shift.set(i, shift[i] + e[slot]);
            }
            out.push(Term::new(self.root.func, shift));
        });
    }
}

fn distribute(e: &mut Vec<u32>, i: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if e.is_empty() {
        if left == 0 {
            f(e);
        }
        return;
    }
    if i + 1 == e.len() {
        e[i] = left;
        f(e);
        return;
    }
    for k in 0..=left {
        e[i] = k;
        distribute(e, i + 1, left - k, f);
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Disjoint cones covering the terms outside the leading-term module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    n: usize,
    cones: Vec<Cone>,
}

impl ConeDecomposition {
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_finite(&self) -> bool {
        self.cones.iter().all(|c| c.multiplicative.is_empty())
    }

    /// The whole residue-class basis when it is finite.
    pub fn finite_terms(&self) -> Option<Vec<Term>> {
        self.is_finite().then(|| self.cones.iter().map(|c| c.root.clone()).collect())
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.cones.iter().any(|c| c.contains(t))
    }

    pub fn count_degree(&self, d: u64) -> u64 {
        self.cones.iter().map(|c| c.count_degree(d)).sum()
    }

    /// Basis terms of shift degree `d`.
    pub fn terms_of_degree(&self, d: u64) -> Vec<Term> {
        let mut out = Vec::new();
        for c in &self.cones {
            c.members_of_degree(d, &mut out);
        }
        out
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::from_cones(&self.cones)
    }

    /// Removes every term matched by `rel`.
    pub fn remove(&mut self, rel: &QuotientRelation) {
        let cones = std::mem::take(&mut self.cones);
        self.cones = cones.into_iter().flat_map(|c| rel.subtract(&c)).collect();
    }
}

/// Complementary cone decomposition of the terms outside the module
/// generated by `leading`, one block per function.
pub fn cone_decomposition(leading: &[Term], ring: &Ring) -> ConeDecomposition {
    let n = ring.n();
    let order = ring.ranking().index_order().to_vec();
    let mut cones = Vec::new();
    for f in 0..ring.m() {
        let gens: Vec<Vec<u32>> =
            leading.iter().filter(|t| t.func == f).map(|t| t.shift.as_slice().to_vec()).collect();
        let mut root = vec![0u32; n];
        complement(&gens, &order, &mut root, &mut Vec::new(), &mut |shift, mult| {
            let mut multiplicative = mult.to_vec();
            multiplicative.sort_unstable();
            cones.push(Cone { root: Term::new(f, ExponentVector::from_slice(shift)), multiplicative });
        });
    }
    ConeDecomposition { n, cones }
}

fn complement(
    gens: &[Vec<u32>],
    vars: &[usize],
    root: &mut Vec<u32>,
    mult: &mut Vec<usize>,
    emit: &mut impl FnMut(&[u32], &[usize]),
) {
    // gens are restricted to the coordinates in vars; the rest are fixed by root
    if gens.iter().any(|g| vars.iter().all(|&i| g[i] == 0)) {
        return;
    }
    let Some((&v, rest)) = vars.split_first() else {
        emit(root, mult);
        return;
    };
    if gens.is_empty() {
        let before = mult.len();
        mult.extend_from_slice(vars);
        emit(root, mult);
        mult.truncate(before);
        return;
    }
    let d = gens.iter().map(|g| g[v]).max().unwrap_or(0);
    for k in 0..=d {
        let slice: Vec<Vec<u32>> = gens.iter().filter(|g| g[v] <= k).cloned().collect();
        root[v] = k;
        if k == d {
            mult.push(v);
            complement(&slice, rest, root, mult, emit);
            mult.pop();
        } else {
            complement(&slice, rest, root, mult, emit);
        }
    }
    root[v] = 0;
}

/// Residue-class basis of a completed basis, with the terms matched by
/// `relations` removed.
pub fn residue_class_basis(basis: &JanetBasis, relations: &RelationStore) -> ConeDecomposition {
    let mut dec = cone_decomposition(&basis.leading_terms(), basis.ring());
    for rel in relations.relations() {
        dec.remove(rel);
    }
    dec
}

pub fn hilbert_series(basis: &JanetBasis) -> HilbertSeries {
    cone_decomposition(&basis.leading_terms(), basis.ring()).hilbert_series()
}

/// `numerator(t) / (1 − t)^denominator_power` with integer numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denominator_power: u32,
}

impl HilbertSeries {
    pub fn from_cones(cones: &[Cone]) -> Self {
        let dim = cones.iter().map(|c| c.multiplicative.len() as u32).max().unwrap_or(0);
        let mut numerator: Vec<i64> = Vec::new();
        for c in cones {
            // t^deg (1 − t)^(dim − |S|)
            let shift = c.root.shift.degree() as usize;
            let k = dim - c.multiplicative.len() as u32;
            let mut factor = vec![1i64];
            for _ in 0..k {
                let mut next = vec![0i64; factor.len() + 1];
                for (i, a) in factor.iter().enumerate() {
                    next[i] += a;
                    next[i + 1] -= a;
                }
                factor = next;
            }
            if numerator.len() < shift + factor.len() {
                numerator.resize(shift + factor.len(), 0);
            }
            for (i, a) in factor.iter().enumerate() {
                numerator[shift + i] += a;
            }
        }
        let mut hs = HilbertSeries { numerator, denominator_power: dim };
        hs.trim();
        hs.cancel();
        hs
    }

    fn trim(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
    }

    fn cancel(&mut self) {
        while self.denominator_power > 0 && !self.numerator.is_empty() && self.numerator.iter().sum::<i64>() == 0 {
            // synthetic division by (1 − t)
            let mut q = vec![0i64; self.numerator.len() - 1];
            let mut acc = 0;
            for (i, slot) in q.iter_mut().enumerate() {
                acc += self.numerator[i];
                *slot = acc;
            }
            self.numerator = q;
            self.denominator_power -= 1;
            self.trim();
        }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator_power(&self) -> u32 {
        self.denominator_power
    }

    /// Coefficient of `t^k` in the expansion.
    pub fn coefficient(&self, k: u64) -> i64 {
        let d = u64::from(self.denominator_power);
        let mut acc = 0i64;
        for (j, a) in self.numerator.iter().enumerate() {
            let j = j as u64;
            if j > k {
                break;
            }
            let c = if d == 0 { u64::from(j == k) } else { binomial(k - j + d - 1, d - 1) };
            acc += a * c as i64;
        }
        acc
    }

    pub fn truncated(&self, order: u64) -> Vec<i64> {
        (0..order).map(|k| self.coefficient(k)).collect()
    }

    /// `c0 + c1*t + ... + O(t^order)`.
    pub fn series_string(&self, order: u64) -> String {
        let mut s = poly_string(&self.truncated(order));
        if self.denominator_power > 0 || self.numerator.len() as u64 > order {
            if s == "0" {
                s = format!("O(t^{order})");
            } else {
                s.push_str(&format!(" + O(t^{order})"));
            }
        }
        s
    }
}

fn poly_string(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if c < 0 { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag == 1 {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = poly_string(&self.numerator);
        let den = match self.denominator_power {
            0 => return f.write_str(&num),
            1 => "(1 - t)".to_string(),
            d => format!("(1 - t)^{d}"),
        };
        if self.numerator.iter().filter(|&&c| c != 0).count() > 1 {
            write!(f, "({num})/{den}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

/// Constraint on one shift coordinate of a relation pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftConstraint {
    Any,
    AtLeast(u32),
    Exactly(u32),
}

impl ShiftConstraint {
    fn admits(self, s: u32) -> bool {
        match self {
            ShiftConstraint::Any => true,
            ShiftConstraint::AtLeast(c) => s >= c,
            ShiftConstraint::Exactly(c) => s == c,
        }
    }
}

// coordinate set of a cone: {a} or [a, ∞)
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coord {
    Point(u32),
    Ray(u32),
}

/// A family of terms declared zero, e.g. `f[k>=3, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientRelation {
    text: String,
    func: usize,
    constraints: Vec<ShiftConstraint>,
}

impl QuotientRelation {
    pub fn new(text: impl Into<String>, func: usize, constraints: Vec<ShiftConstraint>) -> Self {
        QuotientRelation { text: text.into(), func, constraints }
    }

    /// Parses `f`, or `f[s_1, ..., s_n]` with one slot per index in
    /// declaration order. A slot is `k` (any shift), `k+c` (exactly `c`) or
    /// `k>=c` (at least `c`); under backward shifts write `k-c` and `k<=-c`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        let sig = ring.signature();
        let src = text.trim();
        let err = |msg: String| Error::InvalidInput(format!("relation '{src}': {msg}"));
        let (name, slots) = match src.find('[') {
            None => (src, None),
            Some(open) => {
                let inner = src[open + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| err("missing closing bracket".into()))?;
                (src[..open].trim(), Some(inner))
            }
        };
        let func = sig.function_position(name).ok_or_else(|| err(format!("unknown function '{name}'")))?;
        let n = sig.n();
        let Some(slots) = slots else {
            return Ok(QuotientRelation { text: src.to_string(), func, constraints: vec![ShiftConstraint::Any; n] });
        };
        let parts: Vec<&str> = slots.split(',').map(str::trim).collect();
        if parts.len() != n {
            return Err(err(format!("expected {n} slots, found {}", parts.len())));
        }
        let sign = ring.direction().sign();
        let mut constraints = Vec::with_capacity(n);
        for (i, part) in parts.iter().enumerate() {
            let index = &sig.index_names()[i];
            let rest = part
                .strip_prefix(index.as_str())
                .filter(|r| !r.starts_with(|c: char| c.is_alphanumeric() || c == '_'))
                .ok_or_else(|| err(format!("slot {} must start with index '{index}'", i + 1)))?
                .trim();
            let number = |s: &str| -> Result<i64> {
                s.replace(' ', "").parse::<i64>().map_err(|_| err(format!("bad offset '{s}' in slot {}", i + 1)))
            };
            let internal = |w: i64| -> Result<u32> {
                u32::try_from(w * sign).map_err(|_| err(format!("offset {w} points against the shift direction")))
            };
            let c = if rest.is_empty() {
                ShiftConstraint::Any
            } else if let Some(v) = rest.strip_prefix(">=") {
                if sign < 0 {
                    return Err(err("use '<=' with backward shifts".into()));
                }
                ShiftConstraint::AtLeast(internal(number(v)?)?)
            } else if let Some(v) = rest.strip_prefix("<=") {
                if sign > 0 {
                    return Err(err("use '>=' with forward shifts".into()));
                }
                ShiftConstraint::AtLeast(internal(number(v)?)?)
            } else if rest.starts_with('+') || rest.starts_with('-') {
                ShiftConstraint::Exactly(internal(number(rest)?)?)
            } else {
                return Err(err(format!("cannot read slot '{part}'")));
            };
            constraints.push(c);
        }
        Ok(QuotientRelation { text: src.to_string(), func, constraints })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn func(&self) -> usize {
        self.func
    }

    pub fn constraints(&self) -> &[ShiftConstraint] {
        &self.constraints
    }

    pub fn matches(&self, t: &Term) -> bool {
        t.func == self.func && self.constraints.iter().zip(t.shift.iter()).all(|(c, s)| c.admits(s))
    }

    /// `cone \ pattern` as disjoint cones.
    fn subtract(&self, cone: &Cone) -> Vec<Cone> {
        if cone.root.func != self.func {
            return vec![cone.clone()];
        }
        let n = cone.root.shift.len();
        let coords: Vec<Coord> = (0..n)
            .map(|i| {
                let r = cone.root.shift[i];
                if cone.multiplicative.contains(&i) {
                    Coord::Ray(r)
                } else {
                    Coord::Point(r)
                }
            })
            .collect();
        let mut out = Vec::new();
        let mut prefix: Vec<Coord> = Vec::new();
        for i in 0..n {
            let (inside, outside) = split(coords[i], self.constraints[i]);
            for piece in outside {
                let mut cs = prefix.clone();
                cs.push(piece);
                cs.extend_from_slice(&coords[i + 1..]);
                out.push(coords_to_cone(cone.root.func, &cs));
            }
            match inside {
                Some(c) => prefix.push(c),
                None => return out,
            }
        }
        // the remaining product lies entirely in the pattern
        out
    }
}

fn split(a: Coord, b: ShiftConstraint) -> (Option<Coord>, Vec<Coord>) {
    use Coord::*;
    use ShiftConstraint::*;
    match (a, b) {
        (a, Any) => (Some(a), vec![]),
        (Point(r), c) => {
            if c.admits(r) {
                (Some(Point(r)), vec![])
            } else {
                (None, vec![Point(r)])
            }
        }
        (Ray(r), Exactly(c)) => {
            if c < r {
                (None, vec![Ray(r)])
            } else {
                let mut out: Vec<Coord> = (r..c).map(Point).collect();
                out.push(Ray(c + 1));
                (Some(Point(c)), out)
            }
        }
        (Ray(r), AtLeast(c)) => (Some(Ray(r.max(c))), (r..c).map(Point).collect()),
    }
}

fn coords_to_cone(func: usize, cs: &[Coord]) -> Cone {
    let mut shift = ExponentVector::zeros(cs.len());
    let mut multiplicative = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        match *c {
            Coord::Point(a) => shift.set(i, a),
            Coord::Ray(a) => {
                shift.set(i, a);
                multiplicative.push(i);
            }
        }
    }
    Cone { root: Term::new(func, shift), multiplicative }
}

/// Session store of quotient relations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationStore {
    relations: Vec<QuotientRelation>,
}

impl RelationStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, rel: QuotientRelation) {
        if !self.relations.contains(&rel) {
            self.relations.push(rel);
        }
    }

    pub fn relations(&self) -> &[QuotientRelation] {
        &self.relations
    }

    /// The stored relations, verbatim.
    pub fn list(&self) -> Vec<&str> {
        self.relations.iter().map(|r| r.text()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn matches(&self, t: &Term) -> bool {
        self.relations.iter().any(|r| r.matches(t))
    }

    pub fn erase(&self, p: &LinearPoly) -> LinearPoly {
        if self.is_empty() {
            return p.clone();
        }
        p.without_terms(|t| self.matches(t))
    }

    /// J-normal form with the matched terms erased afterwards.
    pub fn reduce(&self, p: &LinearPoly, basis: &JanetBasis) -> LinearPoly {
        self.erase(&basis.normal_form(p))
    }
}
