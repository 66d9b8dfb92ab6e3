use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Exponents of a coefficient monomial; trailing zeros are never stored so
/// that the derived `Ord` is the lexicographic order with variable 0 highest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(SmallVec<[u32; 4]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Mono(SmallVec::from_slice(exps));
        m.trim();
        m
    }

    pub fn var(v: usize, power: u32) -> Self {
        let mut e = SmallVec::from_elem(0, v + 1);
        e[v] = power;
        let mut m = Mono(e);
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let len = self.0.len().max(other.0.len());
        Mono((0..len).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    pub fn checked_div(&self, other: &Mono) -> Option<Mono> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = SmallVec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            out.push(self.exp(i).checked_sub(other.exp(i))?);
        }
        let mut m = Mono(out);
        m.trim();
        Some(m)
    }

    pub(crate) fn with_exp(&self, v: usize, e: u32) -> Mono {
        let mut out = self.0.clone();
        if out.len() <= v {
            out.resize(v + 1, 0);
        }
        out[v] = e;
        let mut m = Mono(out);
        m.trim();
        m
    }
}

/// Sparse multivariate polynomial over Q, terms sorted descending in lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<(Mono, BigRational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MultiPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The coefficient variable `v`.
    pub fn var(v: usize) -> Self {
        MultiPoly { terms: vec![(Mono::var(v, 1), BigRational::one())] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(terms: impl IntoIterator<Item = (Mono, BigRational)>) -> Self {
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_sorted_map(acc)
    }

    fn from_sorted_map(acc: BTreeMap<Mono, BigRational>) -> Self {
        MultiPoly { terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading coefficient in lex order (zero for the zero polynomial).
    pub fn lc(&self) -> BigRational {
        self.terms.first().map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    pub fn lm(&self) -> Option<&Mono> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn integer_primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = BigRational::new(den, num);
        if self.lc().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn mul_mono(&self, mono: &Mono) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    /// Largest variable index occurring plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.0.len()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`: `self = Σ_k out[k]·v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<BTreeMap<Mono, BigRational>> = vec![BTreeMap::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            buckets[k].insert(m.with_exp(v, 0), c.clone());
        }
        buckets.into_iter().map(Self::from_sorted_map).collect()
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(v: usize, coeffs: &[MultiPoly]) -> Self {
        let mut acc = BTreeMap::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                acc.insert(m.with_exp(v, k as u32), a.clone());
            }
        }
        Self::from_sorted_map(acc)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm_d, lc_d) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some((lm_r, lc_r)) = rem.terms.first() {
            let m = lm_r.checked_div(lm_d)?;
            let c = lc_r / lc_d;
            rem = &rem - &divisor.mul_mono(&m).scale(&c);
            quotient.push((m, c));
        }
        // quotient terms were produced in strictly decreasing order
        Some(MultiPoly { terms: quotient })
    }

    /// Substitutes `x_v ↦ x_v + amount`.
    pub fn shift_var(&self, v: usize, amount: i64) -> Self {
        if amount == 0 || !self.contains_var(v) {
            return self.clone();
        }
        let a = BigRational::from_integer(BigInt::from(amount));
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            // (x + a)^e = Σ_j C(e, j) a^(e-j) x^j
            let mut binom = BigInt::one();
            let mut apow = vec![BigRational::one(); e as usize + 1];
            for k in 1..=e as usize {
                apow[k] = &apow[k - 1] * &a;
            }
            for j in 0..=e {
                let coeff = c * BigRational::from_integer(binom.clone()) * &apow[(e - j) as usize];
                *acc.entry(m.with_exp(v, j)).or_insert_with(BigRational::zero) += coeff;
                binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
            }
        }
        Self::from_sorted_map(acc)
    }

    /// Evaluates at a point; missing variables evaluate to zero.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let x = point.get(v).cloned().unwrap_or_else(BigRational::zero);
                    term *= num_traits::pow(x, e as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Renders with the given variable names, e.g. `2*n^2 - 1/2*d + 3`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayMultiPoly { poly: self, names }
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        MultiPoly { terms: out }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self.merge(other, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero();
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        MultiPoly::from_sorted_map(acc)
    }
}

struct DisplayMultiPoly<'a> {
    poly: &'a MultiPoly,
    names: &'a [String],
}

impl fmt::Display for DisplayMultiPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.names.get(v).cloned().unwrap_or_else(|| format!("v{v}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
