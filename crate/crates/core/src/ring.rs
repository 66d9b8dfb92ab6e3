//! Difference terms `θ^μ∘y^k`, rankings and the shift action on terms.
//!
//! A [`RingSignature`] fixes the independent variables (indices), the
//! indeterminates (functions) and the shift-invariant parameters. Terms carry
//! a dense exponent vector of the signature's arity; a [`Ranking`] totally
//! orders them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::Index;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Which way the difference operators shift their argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ShiftDirection {
    /// `θ_i` maps `x_i` to `x_i + 1`.
    #[default]
    Forward,
    /// `θ_i` maps `x_i` to `x_i - 1`.
    Backward,
}

impl ShiftDirection {
    pub fn sign(self) -> i64 {
        match self {
            ShiftDirection::Forward => 1,
            ShiftDirection::Backward => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            ShiftDirection::Forward => ShiftDirection::Backward,
            ShiftDirection::Backward => ShiftDirection::Forward,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftDirection::Forward => "forward",
            ShiftDirection::Backward => "backward",
        }
    }
}

/// Names of the index variables, indeterminates and parameters of a ring.
///
/// Coefficient variables are numbered with the index variables first
/// (`0..n`) followed by the parameters (`n..n+p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSignature {
    index_names: Vec<String>,
    function_names: Vec<String>,
    parameter_names: Vec<String>,
    direction: ShiftDirection,
}

impl RingSignature {
    pub fn new<S: AsRef<str>>(indices: &[S], functions: &[S], parameters: &[S]) -> Result<Self> {
        let own = |v: &[S]| v.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        let sig = RingSignature {
            index_names: own(indices),
            function_names: own(functions),
            parameter_names: own(parameters),
            direction: ShiftDirection::Forward,
        };
        sig.validate()?;
        Ok(sig)
    }

    fn validate(&self) -> Result<()> {
        if self.index_names.is_empty() {
            return Err(Error::Signature("at least one index variable is required".into()));
        }
        if self.function_names.is_empty() {
            return Err(Error::Signature("at least one function is required".into()));
        }
        let mut seen = HashSet::new();
        for name in self.all_names() {
            if !is_identifier(name) {
                return Err(Error::Signature(format!("'{name}' is not a valid identifier")));
            }
            if !seen.insert(name) {
                return Err(Error::Signature(format!("name '{name}' is declared twice")));
            }
        }
        // `T<index>` is the operator syntax; it must not be shadowed.
        for name in self.all_names() {
            if let Some(rest) = name.strip_prefix('T') {
                if self.index_names.iter().any(|i| i == rest) {
                    return Err(Error::Signature(format!(
                        "name '{name}' collides with the shift operator for index '{rest}'"
                    )));
                }
            }
        }
        Ok(())
    }

    fn all_names(&self) -> impl Iterator<Item = &str> {
        self.index_names
            .iter()
            .chain(&self.function_names)
            .chain(&self.parameter_names)
            .map(String::as_str)
    }

    pub fn with_direction(mut self, direction: ShiftDirection) -> Self {
        self.direction = direction;
        self
    }

    /// Returns a copy extended by extra functions appended after the existing ones.
    pub fn with_extra_functions<S: AsRef<str>>(&self, extra: &[S]) -> Result<Self> {
        let mut sig = self.clone();
        sig.function_names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        sig.validate()?;
        Ok(sig)
    }

    /// Number of index variables `n`.
    pub fn n(&self) -> usize {
        self.index_names.len()
    }

    /// Number of indeterminates `m`.
    pub fn m(&self) -> usize {
        self.function_names.len()
    }

    pub fn num_parameters(&self) -> usize {
        self.parameter_names.len()
    }

    /// Number of coefficient variables (indices followed by parameters).
    pub fn num_coeff_vars(&self) -> usize {
        self.n() + self.num_parameters()
    }

    pub fn index_names(&self) -> &[String] {
        &self.index_names
    }

    pub fn function_names(&self) -> &[String] {
        &self.function_names
    }

    pub fn parameter_names(&self) -> &[String] {
        &self.parameter_names
    }

    pub fn direction(&self) -> ShiftDirection {
        self.direction
    }

    pub fn coeff_var_names(&self) -> Vec<String> {
        self.index_names.iter().chain(&self.parameter_names).cloned().collect()
    }

    pub fn index_position(&self, name: &str) -> Option<usize> {
        self.index_names.iter().position(|s| s == name)
    }

    pub fn function_position(&self, name: &str) -> Option<usize> {
        self.function_names.iter().position(|s| s == name)
    }

    pub fn parameter_position(&self, name: &str) -> Option<usize> {
        self.parameter_names.iter().position(|s| s == name)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector `μ ∈ Z^n_{≥0}` of a shift operator `θ^μ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExponentVector(SmallVec<[u32; 4]>);

impl ExponentVector {
    pub fn zeros(n: usize) -> Self {
        ExponentVector(SmallVec::from_elem(0, n))
    }

    pub fn from_slice(entries: &[u32]) -> Self {
        ExponentVector(SmallVec::from_slice(entries))
    }

    /// The unit vector `e_i` scaled by `power`.
    pub fn unit(n: usize, i: usize, power: u32) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = power;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// `|μ|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn set(&mut self, i: usize, value: u32) {
        self.0[i] = value;
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, defined only when the result stays nonnegative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(ExponentVector)
    }

    /// True when `other - self` is componentwise nonnegative.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(SmallVec::from_vec(v))
    }
}

impl FromIterator<u32> for ExponentVector {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        ExponentVector(iter.into_iter().collect())
    }
}

/// A difference term `θ^μ∘y^k`.
///
/// The derived `Ord` is a canonical storage order only; use a [`Ranking`] for
/// the mathematical ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub func: usize,
    pub shift: ExponentVector,
}

impl Term {
    pub fn new(func: usize, shift: ExponentVector) -> Self {
        Term { func, shift }
    }

    /// The unshifted indeterminate `y^k` in a ring with `n` indices.
    pub fn unshifted(func: usize, n: usize) -> Self {
        Term { func, shift: ExponentVector::zeros(n) }
    }

    pub fn degree(&self) -> u64 {
        self.shift.degree()
    }
}

/// `θ^β∘t`.
pub fn shift_term(beta: &ExponentVector, t: &Term) -> Term {
    Term { func: t.func, shift: t.shift.add(beta) }
}

/// Returns `θ` with `θ∘v = w`, if there is one.
pub fn term_divides(v: &Term, w: &Term) -> Option<ExponentVector> {
    if v.func != w.func {
        return None;
    }
    w.shift.checked_sub(&v.shift)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
}

impl MonomialOrder {
    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::DegRevLex => "degrevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(Error::InvalidOption(format!("unknown order '{s}' (expected degrevlex or lex)"))),
        }
    }
}

/// Whether shifts or indeterminates are compared first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Priority {
    /// Term over position: compare shift exponents, then functions.
    #[default]
    TermOverPosition,
    /// Position over term: compare functions first (elimination ranking).
    PositionOverTerm,
}

impl Priority {
    pub fn name(self) -> &'static str {
        match self {
            Priority::TermOverPosition => "top",
            Priority::PositionOverTerm => "pot",
        }
    }
}

impl std::str::FromStr for Priority {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "top" => Ok(Priority::TermOverPosition),
            "pot" => Ok(Priority::PositionOverTerm),
            _ => Err(Error::InvalidOption(format!("unknown priority '{s}' (expected top or pot)"))),
        }
    }
}

/// A ranking on difference terms.
///
/// `function_order` and `index_order` list function and index positions from
/// highest to lowest. Degrevlex ties are broken by the reverse-lexicographic
/// rule on `index_order`; under TOP, equal shifts are ordered by `function_order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    order: MonomialOrder,
    priority: Priority,
    function_order: Vec<usize>,
    index_order: Vec<usize>,
    // function position -> rank, 0 = highest
    function_rank: Vec<usize>,
}

impl Ranking {
    pub fn new(sig: &RingSignature, order: MonomialOrder, priority: Priority) -> Self {
        Self::with_orders(order, priority, (0..sig.m()).collect(), (0..sig.n()).collect())
            .expect("identity permutations are valid")
    }

    pub fn with_orders(
        order: MonomialOrder,
        priority: Priority,
        function_order: Vec<usize>,
        index_order: Vec<usize>,
    ) -> Result<Self> {
        check_permutation(&function_order, "function_order")?;
        check_permutation(&index_order, "index_order")?;
        let mut function_rank = vec![0; function_order.len()];
        for (rank, &f) in function_order.iter().enumerate() {
            function_rank[f] = rank;
        }
        Ok(Ranking { order, priority, function_order, index_order, function_rank })
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn priority(&self) -> Priority {
        self.priority
    }

    pub fn function_order(&self) -> &[usize] {
        &self.function_order
    }

    pub fn index_order(&self) -> &[usize] {
        &self.index_order
    }

    pub fn n(&self) -> usize {
        self.index_order.len()
    }

    pub fn m(&self) -> usize {
        self.function_order.len()
    }

    pub fn fits(&self, sig: &RingSignature) -> bool {
        self.n() == sig.n() && self.m() == sig.m()
    }

    /// Compares shift exponents alone.
    pub fn cmp_shifts(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self.order {
            MonomialOrder::Lex => {
                for &i in &self.index_order {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::DegRevLex => {
                let by_degree = a.degree().cmp(&b.degree());
                if by_degree != Ordering::Equal {
                    return by_degree;
                }
                for &i in self.index_order.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        // smaller exponent in the trailing variable ranks higher
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn cmp_functions(&self, a: usize, b: usize) -> Ordering {
        self.function_rank[b].cmp(&self.function_rank[a])
    }

    /// Ranking comparison without arity checks.
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        match self.priority {
            Priority::TermOverPosition => self
                .cmp_shifts(&a.shift, &b.shift)
                .then_with(|| self.cmp_functions(a.func, b.func)),
            Priority::PositionOverTerm => self
                .cmp_functions(a.func, b.func)
                .then_with(|| self.cmp_shifts(&a.shift, &b.shift)),
        }
    }

    /// Ranking comparison that rejects terms from a different signature.
    pub fn compare_terms(&self, a: &Term, b: &Term) -> Result<Ordering> {
        for t in [a, b] {
            if t.shift.len() != self.n() || t.func >= self.m() {
                return Err(Error::SignatureMismatch(format!(
                    "term with {} indices and function #{} compared under a ranking over {} indices and {} functions",
                    t.shift.len(),
                    t.func,
                    self.n(),
                    self.m()
                )));
            }
        }
        Ok(self.cmp_terms(a, b))
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.order.name(), self.priority.name())
    }
}

fn check_permutation(perm: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidOption(format!("{what} is not a permutation: {perm:?}")));
        }
    }
    Ok(())
}

/// A signature together with the active ranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    signature: Arc<RingSignature>,
    ranking: Ranking,
}

impl Ring {
    pub fn new(signature: RingSignature, ranking: Ranking) -> Result<Self> {
        Self::from_shared(Arc::new(signature), ranking)
    }

    pub fn from_shared(signature: Arc<RingSignature>, ranking: Ranking) -> Result<Self> {
        if !ranking.fits(&signature) {
            return Err(Error::SignatureMismatch(format!(
                "ranking over {} indices/{} functions does not fit a signature with {}/{}",
                ranking.n(),
                ranking.m(),
                signature.n(),
                signature.m()
            )));
        }
        Ok(Ring { signature, ranking })
    }

    /// Degrevlex, term-over-position, in declaration order.
    pub fn with_default_ranking(signature: RingSignature) -> Self {
        let ranking = Ranking::new(&signature, MonomialOrder::DegRevLex, Priority::TermOverPosition);
        Ring { signature: Arc::new(signature), ranking }
    }

    pub fn signature(&self) -> &RingSignature {
        &self.signature
    }

    pub fn shared_signature(&self) -> &Arc<RingSignature> {
        &self.signature
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn n(&self) -> usize {
        self.signature.n()
    }

    pub fn m(&self) -> usize {
        self.signature.m()
    }

    pub fn direction(&self) -> ShiftDirection {
        self.signature.direction()
    }

    pub fn with_ranking(&self, ranking: Ranking) -> Result<Self> {
        Ring::from_shared(self.signature.clone(), ranking)
    }

    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.ranking.cmp_terms(a, b)
    }

    pub fn term(&self, func: usize, shift: &[u32]) -> Term {
        debug_assert_eq!(shift.len(), self.n());
        Term::new(func, ExponentVector::from_slice(shift))
    }
}
