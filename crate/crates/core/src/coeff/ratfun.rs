use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};

/// An element of the difference field K = Q(index variables, parameters).
///
/// Always normalized: numerator and denominator are coprime and the
/// denominator has lex leading coefficient 1. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: MultiPoly::zero(), den: MultiPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: MultiPoly::one(), den: MultiPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(MultiPoly::constant(q))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RationalFunction { num: p, den: MultiPoly::one() }
    }

    /// The coefficient variable `v`.
    pub fn var(v: usize) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction { num: num.scale(&c.recip()), den: MultiPoly::one() };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.lc();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Normalizes a pair already known to be coprime.
    fn coprime(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.lc();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            if self.den.is_one() {
                return Self::from_poly(num);
            }
            return Self::normalized(num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return Self::coprime(num, &self.den * &other.den);
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&other.num * &b);
        // the only common factors of num and b*d*g sit in g
        let h = gcd(&num, &g);
        let den = &(&b * &d) * &g;
        if h.is_one() {
            Self::coprime(num, den)
        } else {
            Self::coprime(num.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
        }
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            if self.num.is_constant() || other.num.is_constant() {
                return Self::from_poly(&self.num * &other.num);
            }
        }
        if let Some(c) = other.constant_value() {
            return RationalFunction { num: self.num.scale(&c), den: self.den.clone() };
        }
        if let Some(c) = self.constant_value() {
            return RationalFunction { num: other.num.scale(&c), den: other.den.clone() };
        }
        // cross-cancel first to keep the products small
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Self::coprime(&a * &c, &b * &d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Applies `x_v ↦ x_v + amount` to numerator and denominator.
    ///
    /// Substitution preserves coprimality and the lex leading term, so the
    /// result needs no renormalization.
    pub fn shift_var(&self, v: usize, amount: i64) -> Self {
        if amount == 0 {
            return self.clone();
        }
        RationalFunction { num: self.num.shift_var(v, amount), den: self.den.shift_var(v, amount) }
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::Arithmetic("pole of a coefficient hit during evaluation".into()));
        }
        Ok(self.num.eval(point) / d)
    }

    /// Renders with the given coefficient-variable names; the output parses back.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        DisplayRf { rf: self, names }
    }

    /// True when the printed form needs parentheses as a factor of a product.
    pub fn needs_parens(&self) -> bool {
        if !self.den.is_one() {
            return true;
        }
        self.num.len() > 1
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for RationalFunction {
    fn from(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }
}

struct DisplayRf<'a> {
    rf: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for DisplayRf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rf.den.is_one() {
            return write!(f, "{}", self.rf.num.display(self.names));
        }
        write!(f, "({})/({})", self.rf.num.display(self.names), self.rf.den.display(self.names))
    }
}
