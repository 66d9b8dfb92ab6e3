//! Multivariate GCD over Q: heuristic evaluation/interpolation first,
//! recursive content / primitive PRS when the heuristic gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::multipoly::MultiPoly;

/// Monic greatest common divisor (lex leading coefficient 1). `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    if a == b {
        return a.monic();
    }

    if let Some(h) = heuristic_gcd(&a.integer_primitive(), &b.integer_primitive()) {
        return h.monic();
    }
    prs_gcd(a, b)
}

fn prs_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one();
    }
    let nvars = a.num_vars().max(b.num_vars());
    // A variable present in only one argument cannot occur in the gcd.
    for v in 0..nvars {
        match (a.contains_var(v), b.contains_var(v)) {
            (true, false) => return prs_gcd(&content_in(a, v), b),
            (false, true) => return prs_gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    let v = (0..nvars)
        .filter(|&v| a.contains_var(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("non-constant polynomials share a variable");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let content_gcd = gcd(&ca, &cb);
    let prim = primitive_gcd(pa, pb, v);
    (&content_gcd * &prim).monic()
}

fn int_content(p: &MultiPoly) -> BigInt {
    p.terms().iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

fn max_norm(p: &MultiPoly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.numer().abs()).max().unwrap_or_default()
}

fn int_poly(p: &MultiPoly, f: impl Fn(&BigInt) -> BigInt) -> MultiPoly {
    MultiPoly::from_terms(p.terms().iter().map(|(m, c)| (m.clone(), BigRational::from_integer(f(c.numer())))))
}

/// `p(x_v = xi)`.
fn evaluate_at(p: &MultiPoly, v: usize, xi: &BigInt) -> MultiPoly {
    MultiPoly::from_terms(p.terms().iter().map(|(m, c)| {
        let k = BigRational::from_integer(num_traits::pow(xi.clone(), m.exp(v) as usize));
        (m.with_exp(v, 0), c * k)
    }))
}

/// Reads the coefficients of `p` as balanced base-`xi` expansions in `x_v`.
fn interpolate(p: &MultiPoly, v: usize, xi: &BigInt) -> MultiPoly {
    let half = xi / 2;
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut rest = c.numer().clone();
        let mut k = 0u32;
        while !rest.is_zero() {
            let mut d = rest.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                terms.push((m.with_exp(v, k), BigRational::from_integer(d.clone())));
            }
            rest = (rest - d) / xi;
            k += 1;
        }
    }
    MultiPoly::from_terms(terms)
}

/// GCD over Z of nonzero integer polynomials, positive leading coefficient.
/// `None` when the evaluation points keep failing.
fn heuristic_gcd(f: &MultiPoly, g: &MultiPoly) -> Option<MultiPoly> {
    let (cf, cg) = (int_content(f), int_content(g));
    let c = cf.gcd(&cg);
    if f.is_constant() || g.is_constant() {
        return Some(MultiPoly::constant(BigRational::from_integer(c)));
    }
    let f = int_poly(f, |x| x / &cf);
    let g = int_poly(g, |x| x / &cg);
    let v = f.num_vars().max(g.num_vars()) - 1;
    let bound: BigInt = max_norm(&f).min(max_norm(&g)) * 2 + 2;
    let mut xi = bound.max(BigInt::from(29));
    for _ in 0..6 {
        let (ff, gg) = (evaluate_at(&f, v, &xi), evaluate_at(&g, v, &xi));
        if !ff.is_zero() && !gg.is_zero() {
            if let Some(hh) = heuristic_gcd(&ff, &gg) {
                let h = interpolate(&hh, v, &xi);
                if !h.is_zero() {
                    let ch = int_content(&h);
                    let mut h = int_poly(&h, |x| x / &ch);
                    if h.lc().is_negative() {
                        h = -&h;
                    }
                    if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                        return Some(h.scale(&BigRational::from_integer(c)));
                    }
                }
            }
        }
        xi = &xi * 73794 * xi.sqrt().sqrt() / 27011 + 1;
    }
    None
}

/// GCD of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for c in p.coeffs_in(v).iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").integer_primitive()
}

/// Both arguments are primitive in `v` with positive degree in `v`.
fn primitive_gcd(a: MultiPoly, b: MultiPoly, v: usize) -> MultiPoly {
    let (a, b) = (a.integer_primitive(), b.integer_primitive());
    let (mut f, mut g) = if a.degree_in(v) >= b.degree_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            return g.monic();
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        f = g;
        g = primitive_part_in(&r, v);
    }
}

fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let gc = g.coeffs_in(v);
    let dg = gc.len() - 1;
    let lg = &gc[dg];
    let mut fc = f.coeffs_in(v);
    while fc.len() > dg && fc.len() > 1 {
        let df = fc.len() - 1;
        let lf = fc[df].clone();
        let shift = df - dg;
        for c in fc.iter_mut() {
            *c = &*c * lg;
        }
        for (k, gk) in gc.iter().enumerate() {
            let t = gk * &lf;
            fc[k + shift] = &fc[k + shift] - &t;
        }
        debug_assert!(fc[df].is_zero());
        while fc.last().is_some_and(|c| c.is_zero()) {
            fc.pop();
        }
        if fc.is_empty() {
            return MultiPoly::zero();
        }
    }
    MultiPoly::from_coeffs_in(v, &fc)
}
