//! Text syntax for coefficients, difference polynomials and shift operators.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! equation := sum ( '=' sum )?
//! sum      := ( '+' | '-' )? product ( ( '+' | '-' ) product )*
//! product  := power ( ( '*' | '/' ) power )*
//! power    := atom ( '^' integer )?
//! atom     := integer | '(' sum ')' | name | name '[' slot ( ',' slot )* ']'
//! slot     := index ( ( '+' | '-' ) integer )?
//! ```
//!
//! A name is an index or parameter (a coefficient), a function (the
//! unshifted term, or a shifted one with brackets listing every index in
//! declaration order) or `T` followed by an index name (a shift operator).
//! Operators compose by `*` and act on polynomials to their right.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::coeff::{shift_coeff_by, RationalFunction};
use crate::error::{Error, Result};
use crate::linpoly::LinearPoly;
use crate::nonlinear::{DiffPoly, DifferenceMonomial};
use crate::ring::{ExponentVector, Ring, RingSignature, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eq,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Comma => "','".into(),
        Tok::Eq => "'='".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((Tok::Num(n), start));
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
            continue;
        }
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'=' => Tok::Eq,
            _ => {
                let ch = src[start..].chars().next().unwrap();
                return Err(Error::parse(src, start, format!("unexpected character '{ch}'")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// `Σ c·θ^μ` with coefficients written to the left of the shifts.
type Operator = BTreeMap<ExponentVector, RationalFunction>;

#[derive(Debug, Clone)]
enum Value {
    Coeff(RationalFunction),
    Op(Operator),
    Poly(DiffPoly),
}

#[derive(Debug, Clone)]
enum ShiftMode {
    /// Written offsets must point along the shift direction.
    Strict,
    /// Records the most negative offset per index; terms are not built faithfully.
    Collect(Vec<i64>),
    /// Every term and coefficient is pre-shifted by the given amount.
    Pre(ExponentVector),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'a Ring,
    mode: ShiftMode,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a Ring, mode: ShiftMode) -> Result<Self> {
        Ok(Parser { src, toks: tokenize(src)?, pos: 0, ring, mode })
    }

    fn sig(&self) -> &RingSignature {
        self.ring.signature()
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.src, offset, msg)
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.err_at(self.offset(), format!("expected {}, found {}", describe(&want), describe(self.peek()))))
        }
    }

    fn equation(&mut self) -> Result<Value> {
        let lhs = self.sum()?;
        let out = if *self.peek() == Tok::Eq {
            let at = self.offset();
            self.bump();
            let rhs = self.sum()?;
            self.combine(lhs, rhs, Tok::Minus, at)?
        } else {
            lhs
        };
        if *self.peek() != Tok::End {
            return Err(self.err_at(self.offset(), format!("unexpected {}", describe(self.peek()))));
        }
        Ok(out)
    }

    fn sum(&mut self) -> Result<Value> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                let at = self.offset();
                self.bump();
                let v = self.product()?;
                self.combine(Value::Coeff(RationalFunction::zero()), v, Tok::Minus, at)?
            }
            Tok::Plus => {
                self.bump();
                self.product()?
            }
            _ => self.product()?,
        };
        while matches!(self.peek(), Tok::Plus | Tok::Minus) {
            let at = self.offset();
            let op = self.bump();
            let rhs = self.product()?;
            acc = self.combine(acc, rhs, op, at)?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        while matches!(self.peek(), Tok::Star | Tok::Slash) {
            let at = self.offset();
            let op = self.bump();
            let rhs = self.power()?;
            acc = self.combine(acc, rhs, op, at)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.offset();
        self.bump();
        let e = match self.bump() {
            Tok::Num(n) => u32::try_from(n).map_err(|_| self.err_at(at, "exponent too large"))?,
            other => return Err(self.err_at(at, format!("expected a nonnegative integer exponent, found {}", describe(&other)))),
        };
        let mut acc = Value::Coeff(RationalFunction::one());
        for _ in 0..e {
            acc = self.combine(acc, base.clone(), Tok::Star, at)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Value> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(Value::Coeff(RationalFunction::from(n))),
            Tok::LParen => {
                let v = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(v)
            }
            Tok::Ident(name) => self.name(name, at),
            other => Err(self.err_at(at, format!("unexpected {}", describe(&other)))),
        }
    }

    fn name(&mut self, name: String, at: usize) -> Result<Value> {
        let n = self.sig().n();
        if let Some(i) = self.sig().index_position(&name) {
            let x = RationalFunction::var(i);
            return Ok(Value::Coeff(self.pre_shift_coeff(&x)));
        }
        if let Some(p) = self.sig().parameter_position(&name) {
            return Ok(Value::Coeff(RationalFunction::var(n + p)));
        }
        if let Some(f) = self.sig().function_position(&name) {
            let written = if *self.peek() == Tok::LBracket { self.slots()? } else { vec![0; n] };
            let shift = self.internal_shift(&written, at)?;
            return Ok(Value::Poly(DiffPoly::from_monomial(
                DifferenceMonomial::from_term(Term::new(f, shift)),
                RationalFunction::one(),
            )));
        }
        if let Some(i) = name.strip_prefix('T').and_then(|rest| self.sig().index_position(rest)) {
            let mut op = Operator::new();
            op.insert(ExponentVector::unit(n, i, 1), RationalFunction::one());
            return Ok(Value::Op(op));
        }
        Err(self.err_at(at, format!("unknown symbol '{name}'")))
    }

    fn slots(&mut self) -> Result<Vec<i64>> {
        self.expect(Tok::LBracket)?;
        let names: Vec<String> = self.sig().index_names().to_vec();
        let mut out = Vec::with_capacity(names.len());
        for (i, index) in names.iter().enumerate() {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            let at = self.offset();
            match self.bump() {
                Tok::Ident(s) if s == *index => {}
                other => {
                    return Err(self.err_at(at, format!("expected index '{index}' in slot {}, found {}", i + 1, describe(&other))))
                }
            }
            let sign = match self.peek() {
                Tok::Plus => 1,
                Tok::Minus => -1,
                _ => {
                    out.push(0);
                    continue;
                }
            };
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Num(k) => {
                    let k = i64::try_from(k).map_err(|_| self.err_at(at, "offset too large"))?;
                    out.push(sign * k);
                }
                other => return Err(self.err_at(at, format!("expected an integer offset, found {}", describe(&other)))),
            }
        }
        if *self.peek() == Tok::Comma {
            return Err(self.err_at(self.offset(), format!("too many slots: the ring has {} indices", names.len())));
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn internal_shift(&mut self, written: &[i64], at: usize) -> Result<ExponentVector> {
        let sign = self.ring.direction().sign();
        let raw: Vec<i64> = written.iter().map(|w| w * sign).collect();
        match &mut self.mode {
            ShiftMode::Strict => {
                if let Some(i) = raw.iter().position(|&s| s < 0) {
                    let index = &self.sig().index_names()[i];
                    return Err(self.err_at(
                        at,
                        format!(
                            "shift in '{index}' points against the {} direction; pre-shift the system (--normalize-shifts) or flip the direction",
                            self.ring.direction().name()
                        ),
                    ));
                }
                Ok(raw.iter().map(|&s| s as u32).collect())
            }
            ShiftMode::Collect(mins) => {
                for (m, &s) in mins.iter_mut().zip(&raw) {
                    *m = (*m).min(s);
                }
                Ok(raw.iter().map(|&s| s.max(0) as u32).collect())
            }
            ShiftMode::Pre(pre) => {
                let shifted: Vec<i64> = raw.iter().zip(pre.iter()).map(|(s, p)| s + i64::from(p)).collect();
                if shifted.iter().any(|&s| s < 0) {
                    return Err(self.err_at(at, "term outside the pre-shifted range"));
                }
                Ok(shifted.iter().map(|&s| s as u32).collect())
            }
        }
    }

    fn pre_shift_coeff(&self, c: &RationalFunction) -> RationalFunction {
        match &self.mode {
            ShiftMode::Pre(pre) => shift_coeff_by(pre, c, self.ring.direction()),
            _ => c.clone(),
        }
    }

    fn combine(&self, a: Value, b: Value, op: Tok, at: usize) -> Result<Value> {
        use Value::*;
        let ring = self.ring;
        let arith = |e: Error| match e {
            Error::Arithmetic(m) => self.err_at(at, m),
            other => other,
        };
        let negate = op == Tok::Minus;
        Ok(match (op, a, b) {
            (Tok::Plus, Coeff(x), Coeff(y)) => Coeff(x.add(&y)),
            (Tok::Minus, Coeff(x), Coeff(y)) => Coeff(x.sub(&y)),
            (Tok::Star, Coeff(x), Coeff(y)) => Coeff(x.mul(&y)),
            (Tok::Slash, Coeff(x), Coeff(y)) => Coeff(x.div(&y).map_err(arith)?),

            (Tok::Plus | Tok::Minus, Op(x), Op(y)) => Op(op_add(x, y, negate)),
            (Tok::Plus | Tok::Minus, Op(x), Coeff(c)) => Op(op_add(x, op_const(c, ring.n()), negate)),
            (Tok::Plus | Tok::Minus, Coeff(c), Op(y)) => Op(op_add(op_const(c, ring.n()), y, negate)),
            (Tok::Star, Op(x), Op(y)) => Op(op_mul(&x, &y, ring)),
            (Tok::Star, Coeff(c), Op(y)) => Op(op_mul(&op_const(c, ring.n()), &y, ring)),
            (Tok::Star, Op(x), Coeff(c)) => Op(op_mul(&x, &op_const(c, ring.n()), ring)),
            (Tok::Slash, Op(x), Coeff(c)) => {
                let inv = RationalFunction::one().div(&c).map_err(arith)?;
                Op(op_mul(&x, &op_const(inv, ring.n()), ring))
            }
            (Tok::Star, Op(x), Poly(p)) => Poly(op_apply(&x, &p, ring)),

            (Tok::Plus, Poly(p), Poly(q)) => Poly(p.add(&q, ring)),
            (Tok::Minus, Poly(p), Poly(q)) => Poly(p.sub(&q, ring)),
            (Tok::Plus, Poly(p), Coeff(c)) => Poly(p.add(&DiffPoly::constant(c), ring)),
            (Tok::Minus, Poly(p), Coeff(c)) => Poly(p.sub(&DiffPoly::constant(c), ring)),
            (Tok::Plus, Coeff(c), Poly(q)) => Poly(DiffPoly::constant(c).add(&q, ring)),
            (Tok::Minus, Coeff(c), Poly(q)) => Poly(DiffPoly::constant(c).sub(&q, ring)),
            (Tok::Star, Poly(p), Poly(q)) => Poly(p.mul(&q, ring)),
            (Tok::Star, Poly(p), Coeff(c)) | (Tok::Star, Coeff(c), Poly(p)) => Poly(p.scale(&c)),
            (Tok::Slash, Poly(p), Coeff(c)) => Poly(p.scale(&RationalFunction::one().div(&c).map_err(arith)?)),

            (Tok::Slash, _, Poly(_)) => return Err(self.err_at(at, "division by a difference polynomial")),
            (Tok::Slash, _, Op(_)) => return Err(self.err_at(at, "division by a shift operator")),
            (Tok::Star, Poly(_), Op(_)) => {
                return Err(self.err_at(at, "shift operators act on the polynomial to their right"))
            }
            (_, Op(_), Poly(_)) | (_, Poly(_), Op(_)) => {
                return Err(self.err_at(at, "cannot add a shift operator and a polynomial; apply the operator with '*'"))
            }
            (op, _, _) => return Err(self.err_at(at, format!("unsupported operation {}", describe(&op)))),
        })
    }
}

fn op_const(c: RationalFunction, n: usize) -> Operator {
    let mut op = Operator::new();
    if !c.is_zero() {
        op.insert(ExponentVector::zeros(n), c);
    }
    op
}

fn op_add(mut x: Operator, y: Operator, negate: bool) -> Operator {
    for (k, c) in y {
        let c = if negate { c.neg() } else { c };
        let slot = x.entry(k.clone()).or_default();
        *slot = slot.add(&c);
        if slot.is_zero() {
            x.remove(&k);
        }
    }
    x
}

/// `(c θ^a)(d θ^b) = c·θ^a(d)·θ^(a+b)`.
fn op_mul(x: &Operator, y: &Operator, ring: &Ring) -> Operator {
    let mut out = Operator::new();
    for (a, c) in x {
        for (b, d) in y {
            let term = c.mul(&shift_coeff_by(a, d, ring.direction()));
            out = op_add(out, op_single(a.add(b), term), false);
        }
    }
    out
}

fn op_single(k: ExponentVector, c: RationalFunction) -> Operator {
    let mut op = Operator::new();
    if !c.is_zero() {
        op.insert(k, c);
    }
    op
}

fn op_apply(x: &Operator, p: &DiffPoly, ring: &Ring) -> DiffPoly {
    let mut acc = DiffPoly::zero();
    for (a, c) in x {
        acc = acc.add(&p.shifted(a, ring).scale(c), ring);
    }
    acc
}

fn parse_value(src: &str, ring: &Ring, mode: ShiftMode) -> Result<Value> {
    Parser::new(src, ring, mode)?.equation()
}

fn value_to_poly(v: Value, src: &str) -> Result<DiffPoly> {
    match v {
        Value::Poly(p) => Ok(p),
        Value::Coeff(c) if c.is_zero() => Ok(DiffPoly::zero()),
        Value::Coeff(c) => Ok(DiffPoly::constant(c)),
        Value::Op(_) => Err(Error::parse(src, 0, "a shift operator must be applied to a function")),
    }
}

fn poly_to_linear(p: &DiffPoly, ring: &Ring, src: &str) -> Result<LinearPoly> {
    p.to_linear(ring).ok_or_else(|| {
        Error::parse(src, 0, "expected a linear difference polynomial (no products of terms and no constant part)")
    })
}

/// Parses a (possibly nonlinear) difference polynomial; `lhs = rhs` means `lhs − rhs`.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<DiffPoly> {
    value_to_poly(parse_value(src, ring, ShiftMode::Strict)?, src)
}

pub fn parse_linear(src: &str, ring: &Ring) -> Result<LinearPoly> {
    poly_to_linear(&parse_poly(src, ring)?, ring, src)
}

pub fn parse_coefficient(src: &str, ring: &Ring) -> Result<RationalFunction> {
    match parse_value(src, ring, ShiftMode::Strict)? {
        Value::Coeff(c) => Ok(c),
        _ => Err(Error::parse(src, 0, "expected a coefficient")),
    }
}

/// A parsed system together with the pre-shift applied to it.
#[derive(Debug, Clone)]
pub struct ParsedSystem {
    pub polys: Vec<DiffPoly>,
    pub pre_shift: ExponentVector,
}

/// Parses a system. With `normalize`, every equation is multiplied by the
/// same `θ^M`, `M` the largest shift against the direction in the system,
/// so that all offsets become admissible.
pub fn parse_system<S: AsRef<str>>(srcs: &[S], ring: &Ring, normalize: bool) -> Result<ParsedSystem> {
    let n = ring.n();
    let with_index = |i: usize, e: Error| match e {
        Error::Parse { location, message } => {
            Error::Parse { location, message: format!("equation {}: {message}", i + 1) }
        }
        other => other,
    };
    let mut pre = ExponentVector::zeros(n);
    if normalize {
        let mut mins = vec![0i64; n];
        for (i, src) in srcs.iter().enumerate() {
            let mut p = Parser::new(src.as_ref(), ring, ShiftMode::Collect(vec![0; n])).map_err(|e| with_index(i, e))?;
            p.equation().map_err(|e| with_index(i, e))?;
            if let ShiftMode::Collect(m) = p.mode {
                for (acc, v) in mins.iter_mut().zip(m) {
                    *acc = (*acc).min(v);
                }
            }
        }
        pre = mins.iter().map(|&m| (-m) as u32).collect();
    }
    let mode = if pre.is_zero() { ShiftMode::Strict } else { ShiftMode::Pre(pre.clone()) };
    let mut polys = Vec::with_capacity(srcs.len());
    for (i, src) in srcs.iter().enumerate() {
        let src = src.as_ref();
        let v = parse_value(src, ring, mode.clone()).map_err(|e| with_index(i, e))?;
        polys.push(value_to_poly(v, src).map_err(|e| with_index(i, e))?);
    }
    Ok(ParsedSystem { polys, pre_shift: pre })
}

/// [`parse_system`] for linear equations.
pub fn parse_linear_system<S: AsRef<str>>(srcs: &[S], ring: &Ring, normalize: bool) -> Result<(Vec<LinearPoly>, ExponentVector)> {
    let parsed = parse_system(srcs, ring, normalize)?;
    let mut out = Vec::with_capacity(parsed.polys.len());
    for (i, (p, src)) in parsed.polys.iter().zip(srcs).enumerate() {
        out.push(poly_to_linear(p, ring, src.as_ref()).map_err(|e| match e {
            Error::Parse { location, message } => {
                Error::Parse { location, message: format!("equation {}: {message}", i + 1) }
            }
            other => other,
        })?);
    }
    Ok((out, parsed.pre_shift))
}

pub fn format_coeff(c: &RationalFunction, ring: &Ring) -> String {
    c.display(&ring.signature().coeff_var_names()).to_string()
}

/// `u[x+1,y]`; offsets are written in the ring's shift direction.
pub fn format_term(t: &Term, ring: &Ring) -> String {
    let sig = ring.signature();
    let mut s = String::new();
    s.push_str(&sig.function_names()[t.func]);
    s.push('[');
    for (i, e) in t.shift.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&sig.index_names()[i]);
        if e > 0 {
            let _ = write!(s, "{}{e}", if ring.direction().sign() > 0 { '+' } else { '-' });
        }
    }
    s.push(']');
    s
}

pub fn format_monomial(m: &DifferenceMonomial, ring: &Ring) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.factors()
        .iter()
        .map(|(t, p)| if *p == 1 { format_term(t, ring) } else { format!("{}^{p}", format_term(t, ring)) })
        .collect::<Vec<_>>()
        .join("*")
}

fn write_signed(out: &mut String, first: bool, c: &RationalFunction, body: &str, ring: &Ring) {
    let negative = c.numerator().lc().is_negative();
    let mag = if negative { c.neg() } else { c.clone() };
    if first {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if body.is_empty() {
        let text = format_coeff(&mag, ring);
        if negative && mag.numerator().len() > 1 {
            let _ = write!(out, "({text})");
        } else {
            out.push_str(&text);
        }
        return;
    }
    if !mag.is_one() {
        let text = format_coeff(&mag, ring);
        if mag.needs_parens() {
            let _ = write!(out, "({text})*");
        } else {
            let _ = write!(out, "{text}*");
        }
    }
    out.push_str(body);
}

pub fn format_linear(p: &LinearPoly, ring: &Ring) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (t, c)) in p.terms().iter().enumerate() {
        write_signed(&mut out, k == 0, c, &format_term(t, ring), ring);
    }
    out
}

pub fn format_diffpoly(p: &DiffPoly, ring: &Ring) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let body = if m.is_one() { String::new() } else { format_monomial(m, ring) };
        write_signed(&mut out, k == 0, c, &body, ring);
    }
    out
}

/// `Tx^2*Ty`; empty for the identity.
pub fn format_shift_op(beta: &ExponentVector, ring: &Ring) -> String {
    let names = ring.signature().index_names();
    beta.iter()
        .enumerate()
        .filter(|(_, e)| *e > 0)
        .map(|(i, e)| if e == 1 { format!("T{}", names[i]) } else { format!("T{}^{e}", names[i]) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Operator form of the part of `p` in one function, e.g. `(Tx^7 - Ty^2*Tz)*y`.
fn format_operator_on(terms: &[(Term, RationalFunction)], ring: &Ring) -> String {
    let name = &ring.signature().function_names()[terms[0].0.func];
    if terms.len() == 1 && terms[0].1.is_one() {
        let ops = format_shift_op(&terms[0].0.shift, ring);
        return if ops.is_empty() { name.clone() } else { format!("{ops}*{name}") };
    }
    let mut op = String::new();
    for (k, (t, c)) in terms.iter().enumerate() {
        write_signed(&mut op, k == 0, c, &format_shift_op(&t.shift, ring), ring);
    }
    format!("({op})*{name}")
}

/// Operator syntax for a polynomial in a single function.
pub fn pol2shift(p: &LinearPoly, ring: &Ring) -> Result<String> {
    if p.is_zero() {
        return Ok("0".into());
    }
    let f = p.terms()[0].0.func;
    if p.terms().iter().any(|(t, _)| t.func != f) {
        return Err(Error::InvalidInput(
            "operator form needs a polynomial in a single function; use the grouped form for several".into(),
        ));
    }
    Ok(format_operator_on(p.terms(), ring))
}

/// Operator syntax with one operator per function, in ranking order of the
/// functions' leading terms: `(Tx - 1)*u + (Ty)*v`.
pub fn pol2shift_grouped(p: &LinearPoly, ring: &Ring) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut order: Vec<usize> = Vec::new();
    for (t, _) in p.terms() {
        if !order.contains(&t.func) {
            order.push(t.func);
        }
    }
    let parts: Vec<String> = order
        .iter()
        .map(|&f| {
            let terms: Vec<(Term, RationalFunction)> = p.terms().iter().filter(|(t, _)| t.func == f).cloned().collect();
            let s = format_operator_on(&terms, ring);
            if s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect();
    parts.join(" + ")
}

/// Applies operator text (or accepts a polynomial) to `function`.
pub fn shift2pol(src: &str, function: &str, ring: &Ring) -> Result<LinearPoly> {
    let f = ring
        .signature()
        .function_position(function)
        .ok_or_else(|| Error::InvalidInput(format!("unknown function '{function}'")))?;
    let target = DiffPoly::from_monomial(
        DifferenceMonomial::from_term(Term::unshifted(f, ring.n())),
        RationalFunction::one(),
    );
    let p = match parse_value(src, ring, ShiftMode::Strict)? {
        Value::Op(op) => op_apply(&op, &target, ring),
        Value::Coeff(c) => target.scale(&c),
        Value::Poly(p) => p,
    };
    poly_to_linear(&p, ring, src)
}

/// Rewrites a system in the opposite shift direction. With `K` the sum of
/// the smallest and largest shift per index over the whole system, every
/// offset `μ` becomes `K − μ` and each index variable `x_i` in the
/// coefficients becomes `x_i − s·K_i`, `s` the sign of the old direction.
/// Flipping twice is the identity.
pub fn flip_direction(polys: &[LinearPoly], ring: &Ring) -> Result<(Vec<LinearPoly>, Ring)> {
    let n = ring.n();
    let mut lo = vec![u32::MAX; n];
    let mut hi = vec![0u32; n];
    for p in polys {
        for (t, _) in p.terms() {
            for i in 0..n {
                lo[i] = lo[i].min(t.shift[i]);
                hi[i] = hi[i].max(t.shift[i]);
            }
        }
    }
    let k: ExponentVector = (0..n).map(|i| if lo[i] == u32::MAX { 0 } else { lo[i] + hi[i] }).collect();
    let old = ring.direction();
    let sig = ring.signature().clone().with_direction(old.flipped());
    let flipped = Ring::new(sig, ring.ranking().clone())?;
    let sign = BigInt::from(old.sign());
    let mut out = Vec::with_capacity(polys.len());
    for p in polys {
        let terms = p.terms().iter().map(|(t, c)| {
            let shift: ExponentVector = (0..n).map(|i| k[i] - t.shift[i]).collect();
            let mut c = c.clone();
            for i in 0..n {
                if k[i] > 0 {
                    let amount = -(&sign * BigInt::from(k[i]));
                    c = c.shift_var(i, i64::try_from(amount).expect("small shift"));
                }
            }
            (Term::new(t.func, shift), c)
        });
        out.push(LinearPoly::from_terms(&flipped, terms));
    }
    Ok((out, flipped))
}

/// Renders a rational number the way the parser reads it back.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_zero() {
        "0".into()
    } else {
        q.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ShiftDirection, Term};

    fn ring(idx: &[&str], funcs: &[&str], params: &[&str]) -> Ring {
        Ring::with_default_ranking(RingSignature::new(idx, funcs, params).unwrap())
    }

    #[test]
    fn parses_bracket_terms() {
        let r = ring(&["x", "y"], &["u"], &[]);
        let p = parse_linear("u[x+1,y] - u[x,y]", &r).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.lm(), Some(&r.term(0, &[1, 0])));
        assert_eq!(format_linear(&p, &r), "u[x+1,y] - u[x,y]");
        assert_eq!(parse_linear("u - u[x, y]", &r).unwrap(), LinearPoly::zero());
        assert_eq!(parse_linear("u[x+1,y] = u", &r).unwrap(), p);
    }

    #[test]
    fn rational_function_coefficients() {
        let r = ring(&["k", "n"], &["f"], &["d"]);
        let p = parse_linear("(n+1)*f[k,n+1] - (d-2*n)*f[k,n]", &r).unwrap();
        assert_eq!(p.len(), 2);
        let c = p.coefficient(&r.term(0, &[0, 1])).unwrap();
        assert_eq!(format_coeff(c, &r), "n + 1");
        let back = parse_linear(&format_linear(&p, &r), &r).unwrap();
        assert_eq!(back, p);
        let q = parse_linear("1/(n+d)*f[k+1,n] + 3/2*f", &r).unwrap();
        assert_eq!(parse_linear(&format_linear(&q, &r), &r).unwrap(), q);
    }

    #[test]
    fn negative_shift_is_rejected_with_location() {
        let r = ring(&["x", "y"], &["u"], &[]);
        match parse_linear("u[x,y] + u[x-1,y]", &r) {
            Err(Error::Parse { location, .. }) => assert_eq!(location.column, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_linear("u[x,y] + w", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_linear("u[x,y] + 3/", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_linear("u[y,x]", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_linear("u/u", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_linear("u/(x-x)", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn normalization_pre_shifts_the_system() {
        let r = ring(&["x"], &["u"], &[]);
        let (sys, pre) = parse_linear_system(&["x*u[x+1] - u[x-1]", "u[x-2]"], &r, true).unwrap();
        assert_eq!(pre, ExponentVector::from_slice(&[2]));
        assert_eq!(sys[0], parse_linear("(x+2)*u[x+3] - u[x+1]", &r).unwrap());
        assert_eq!(sys[1], parse_linear("u", &r).unwrap());
        assert!(parse_linear_system(&["u[x-1]"], &r, false).is_err());
    }

    #[test]
    fn operators() {
        let r = ring(&["x", "y", "z", "w"], &["f"], &[]);
        let p = shift2pol("Tx^7 - Ty^2*Tz", "f", &r).unwrap();
        assert_eq!(p, parse_linear("f[x+7,y,z,w] - f[x,y+2,z+1,w]", &r).unwrap());
        assert_eq!(pol2shift(&p, &r).unwrap(), "(Tx^7 - Ty^2*Tz)*f");
        let t = LinearPoly::from_term(r.term(0, &[2, 1, 0, 0]));
        assert_eq!(pol2shift(&t, &r).unwrap(), "Tx^2*Ty*f");
        assert_eq!(shift2pol("Tx^2*Ty", "f", &r).unwrap(), t);

        // operators shift the coefficients to their right
        let r1 = ring(&["n"], &["g"], &[]);
        assert_eq!(parse_linear("Tn*n*g", &r1).unwrap(), parse_linear("(n+1)*g[n+1]", &r1).unwrap());
        assert_eq!(parse_linear("n*Tn*g", &r1).unwrap(), parse_linear("n*g[n+1]", &r1).unwrap());
        let two = ring(&["x"], &["u", "v"], &[]);
        let q = parse_linear("u[x+1] + v", &two).unwrap();
        assert!(pol2shift(&q, &two).is_err());
        assert_eq!(pol2shift_grouped(&q, &two), "Tx*u + v");
    }

    #[test]
    fn nonlinear_round_trip() {
        let r = ring(&["x"], &["u"], &["a"]);
        let p = parse_poly("u[x+1]^2*u - a*u[x] + 3", &r).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_poly(&format_diffpoly(&p, &r), &r).unwrap(), p);
    }

    #[test]
    fn backward_direction() {
        let sig = RingSignature::new(&["x"], &["u"], &[]).unwrap().with_direction(ShiftDirection::Backward);
        let r = Ring::with_default_ranking(sig);
        let p = parse_linear("u[x-2] - x*u[x]", &r).unwrap();
        assert_eq!(p.lm(), Some(&Term::new(0, ExponentVector::from_slice(&[2]))));
        assert_eq!(format_linear(&p, &r), "u[x-2] - x*u[x]");
        assert!(parse_linear("u[x+1]", &r).is_err());
    }

    #[test]
    fn direction_flip_round_trip() {
        let r = ring(&["x", "y"], &["u"], &["d"]);
        let sys = vec![
            parse_linear("x*u[x+2,y] - (y+d)*u[x,y+1]", &r).unwrap(),
            parse_linear("u[x+1,y+1] + u[x+1,y]", &r).unwrap(),
        ];
        let (flipped, fr) = flip_direction(&sys, &r).unwrap();
        assert_eq!(fr.direction(), ShiftDirection::Backward);
        assert_eq!(format_linear(&flipped[1], &fr), parse_and_format("u[x-1,y] + u[x-1,y-1]", &fr));
        let (back, br) = flip_direction(&flipped, &fr).unwrap();
        assert_eq!(br.direction(), ShiftDirection::Forward);
        assert_eq!(back, sys.iter().map(|p| p.resorted(&br)).collect::<Vec<_>>());
    }

    fn parse_and_format(s: &str, r: &Ring) -> String {
        format_linear(&parse_linear(s, r).unwrap(), r)
    }
}
