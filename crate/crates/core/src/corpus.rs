//! Seeded random inputs for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{Mono, MultiPoly, RationalFunction};
use crate::linpoly::LinearPoly;
use crate::nonlinear::{DiffPoly, DifferenceMonomial};
use crate::ring::{ExponentVector, MonomialOrder, Priority, Ranking, Ring, RingSignature, Term};

const INDEX_NAMES: [&str; 3] = ["x", "y", "z"];
const FUNCTION_NAMES: [&str; 2] = ["u", "v"];

/// Size limits for generated systems.
#[derive(Debug, Clone)]
pub struct CorpusShape {
    pub max_indices: usize,
    pub max_functions: usize,
    pub max_degree: u32,
    pub max_generators: usize,
    pub max_terms: usize,
    pub max_coeff: i64,
    /// Allow coefficients that are polynomials in the index variables.
    pub variable_coefficients: bool,
}

impl Default for CorpusShape {
    fn default() -> Self {
        CorpusShape {
            max_indices: 3,
            max_functions: 2,
            max_degree: 4,
            max_generators: 4,
            max_terms: 3,
            max_coeff: 3,
            variable_coefficients: false,
        }
    }
}

/// One generated system with its ring.
#[derive(Debug, Clone)]
pub struct LinearInstance {
    pub seed: u64,
    pub ring: Ring,
    pub generators: Vec<LinearPoly>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_ranking(rng: &mut ChaCha8Rng, sig: &RingSignature) -> Ranking {
    let order = if rng.gen_bool(0.5) { MonomialOrder::DegRevLex } else { MonomialOrder::Lex };
    let priority = if rng.gen_bool(0.5) { Priority::TermOverPosition } else { Priority::PositionOverTerm };
    let mut fo: Vec<usize> = (0..sig.m()).collect();
    let mut io: Vec<usize> = (0..sig.n()).collect();
    fo.shuffle(rng);
    io.shuffle(rng);
    Ranking::with_orders(order, priority, fo, io).expect("shuffled permutations")
}

fn random_shift(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> ExponentVector {
    let budget = rng.gen_range(0..=max_degree);
    let mut e = vec![0u32; n];
    for _ in 0..budget {
        e[rng.gen_range(0..n)] += 1;
    }
    ExponentVector::from(e)
}

fn nonzero_int(rng: &mut ChaCha8Rng, max: i64) -> i64 {
    let v = rng.gen_range(1..=max);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// A random polynomial coefficient in the first `vars` coefficient variables.
fn random_multipoly(rng: &mut ChaCha8Rng, vars: usize, max_coeff: i64, max_terms: usize) -> MultiPoly {
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let mut e = vec![0u32; vars];
        if vars > 0 {
            for _ in 0..rng.gen_range(0..=2) {
                e[rng.gen_range(0..vars)] += 1;
            }
        }
        (Mono::from_exponents(&e), num_rational::BigRational::from_integer(nonzero_int(rng, max_coeff).into()))
    });
    let p = MultiPoly::from_terms(terms);
    if p.is_zero() {
        MultiPoly::one()
    } else {
        p
    }
}

fn random_coefficient(rng: &mut ChaCha8Rng, shape: &CorpusShape, vars: usize) -> RationalFunction {
    if shape.variable_coefficients && vars > 0 && rng.gen_bool(0.3) {
        RationalFunction::from_poly(random_multipoly(rng, vars, shape.max_coeff, 2))
    } else {
        RationalFunction::from_int(nonzero_int(rng, shape.max_coeff))
    }
}

/// A random linear system. The sizes are drawn uniformly below the limits;
/// generators that collapse to zero are dropped.
pub fn random_linear_system(seed: u64, shape: &CorpusShape) -> LinearInstance {
    let mut rng = rng(seed);
    let n = rng.gen_range(1..=shape.max_indices);
    let m = rng.gen_range(1..=shape.max_functions);
    let sig = RingSignature::new(&INDEX_NAMES[..n], &FUNCTION_NAMES[..m], &[] as &[&str]).expect("fixed names");
    let ranking = random_ranking(&mut rng, &sig);
    let ring = Ring::new(sig, ranking).expect("ranking fits");
    let count = rng.gen_range(1..=shape.max_generators);
    let mut generators = Vec::with_capacity(count);
    while generators.len() < count {
        let k = rng.gen_range(1..=shape.max_terms);
        let terms: Vec<(Term, RationalFunction)> = (0..k)
            .map(|_| {
                let t = Term::new(rng.gen_range(0..m), random_shift(&mut rng, n, shape.max_degree));
                (t, random_coefficient(&mut rng, shape, n))
            })
            .collect();
        let p = LinearPoly::from_terms(&ring, terms);
        if !p.is_zero() {
            generators.push(p);
        }
    }
    LinearInstance { seed, ring, generators }
}

/// `count` systems with seeds `base, base+1, ...`.
pub fn linear_corpus(base: u64, count: usize, shape: &CorpusShape) -> Vec<LinearInstance> {
    (0..count as u64).map(|i| random_linear_system(base + i, shape)).collect()
}

/// Ring used by [`random_linear_poly`] and [`random_diff_poly`]: two indices,
/// two functions and one parameter.
pub fn round_trip_ring() -> Ring {
    Ring::with_default_ranking(RingSignature::new(&["x", "y"], &["u", "v"], &["d"]).expect("fixed names"))
}

fn round_trip_coefficient(rng: &mut ChaCha8Rng, vars: usize) -> RationalFunction {
    match rng.gen_range(0..4) {
        0 => RationalFunction::from_int(nonzero_int(rng, 9)),
        1 => {
            let q = num_rational::BigRational::new(nonzero_int(rng, 9).into(), rng.gen_range(1..=7i64).into());
            RationalFunction::from_rational(q)
        }
        2 => RationalFunction::from_poly(random_multipoly(rng, vars, 5, 3)),
        _ => {
            let num = random_multipoly(rng, vars, 5, 2);
            let den = random_multipoly(rng, vars, 5, 2);
            RationalFunction::new(num, den).unwrap_or_else(|_| RationalFunction::one())
        }
    }
}

/// A random linear polynomial over [`round_trip_ring`] with rational
/// function coefficients in the indices and the parameter.
pub fn random_linear_poly(rng: &mut ChaCha8Rng, ring: &Ring) -> LinearPoly {
    let vars = ring.signature().num_coeff_vars();
    let k = rng.gen_range(1..=4);
    let terms: Vec<(Term, RationalFunction)> = (0..k)
        .map(|_| {
            let t = Term::new(rng.gen_range(0..ring.m()), random_shift(rng, ring.n(), 4));
            (t, round_trip_coefficient(rng, vars))
        })
        .collect();
    LinearPoly::from_terms(ring, terms)
}

/// A random, usually nonlinear, difference polynomial, possibly with a constant term.
pub fn random_diff_poly(rng: &mut ChaCha8Rng, ring: &Ring) -> DiffPoly {
    let vars = ring.signature().num_coeff_vars();
    let k = rng.gen_range(1..=3);
    let terms: Vec<(DifferenceMonomial, RationalFunction)> = (0..k)
        .map(|_| {
            let factors: Vec<(Term, u32)> = (0..rng.gen_range(0..=2))
                .map(|_| {
                    let t = Term::new(rng.gen_range(0..ring.m()), random_shift(rng, ring.n(), 3));
                    (t, rng.gen_range(1..=2))
                })
                .collect();
            (DifferenceMonomial::from_factors(ring, factors), round_trip_coefficient(rng, vars))
        })
        .collect();
    DiffPoly::from_terms(ring, terms)
}
