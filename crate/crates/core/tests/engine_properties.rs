use janetlike::corpus::{linear_corpus, random_linear_system, rng, CorpusShape};
use janetlike::division::j_divides;
use janetlike::linpoly::{expand_trace, plain_reduce, plain_reduce_traced};
use janetlike::{
    janet_like_basis, j_normal_form, CompletionOptions, DivisionKind, ExponentVector, JanetBasis, LinearPoly,
    RationalFunction, Ring, Term,
};
use proptest::prelude::*;
use rand::Rng as _;

fn all_terms(ring: &Ring, max_degree: u32) -> Vec<Term> {
    let n = ring.n();
    let mut shifts: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        shifts = shifts
            .into_iter()
            .flat_map(|s| {
                let used: u32 = s.iter().sum();
                (0..=max_degree - used).map(move |k| {
                    let mut t = s.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    (0..ring.m()).flat_map(|f| shifts.iter().map(move |s| ring.term(f, s))).collect()
}

fn complete(inst_ring: &Ring, f: &[LinearPoly], kind: DivisionKind) -> JanetBasis {
    let opts = CompletionOptions { track_cofactors: true, ..CompletionOptions::with_division(kind) };
    janet_like_basis(f, inst_ring, opts).unwrap()
}

#[test]
fn cones_are_disjoint_and_cover_lm_multiples() {
    for inst in linear_corpus(5000, 40, &CorpusShape::default()) {
        for kind in [DivisionKind::JanetLike, DivisionKind::Janet] {
            let b = complete(&inst.ring, &inst.generators, kind);
            let lms = b.leading_terms();
            for t in all_terms(&inst.ring, 8) {
                let owners: Vec<usize> = (0..b.len())
                    .filter(|&i| j_divides(&lms[i], b.difference_powers(i), &t).is_some())
                    .collect();
                let multiple = lms.iter().any(|lm| janetlike::ring::term_divides(lm, &t).is_some());
                assert!(owners.len() <= 1, "seed {}: {t:?} in {} cones", inst.seed, owners.len());
                assert_eq!(owners.len() == 1, multiple, "seed {}: {t:?}", inst.seed);
                assert_eq!(b.j_reductor(&t).map(|r| r.0), owners.first().copied());
            }
        }
    }
}

#[test]
fn inputs_reduce_to_zero_and_cofactors_expand() {
    for inst in linear_corpus(6000, 40, &CorpusShape::default()) {
        let b = complete(&inst.ring, &inst.generators, DivisionKind::JanetLike);
        for f in &inst.generators {
            assert!(j_normal_form(f, &b).is_zero(), "seed {}", inst.seed);
        }
        for (i, g) in b.polys().iter().enumerate() {
            assert_eq!(&b.cofactors(i).unwrap().expand(b.inputs(), &inst.ring), g, "seed {}", inst.seed);
        }
    }
}

#[test]
fn membership_of_random_combinations() {
    let shape = CorpusShape::default();
    for seed in 7000..7040u64 {
        let inst = random_linear_system(seed, &shape);
        let ring = &inst.ring;
        let b = complete(ring, &inst.generators, DivisionKind::JanetLike);
        let mut r = rng(seed);
        let mut f = LinearPoly::zero();
        for _ in 0..3 {
            let i = r.gen_range(0..inst.generators.len());
            let beta: ExponentVector = (0..ring.n()).map(|_| r.gen_range(0..3)).collect();
            let c = if ring.n() > 0 && r.gen_bool(0.5) {
                RationalFunction::var(r.gen_range(0..ring.n())).add(&RationalFunction::from_int(r.gen_range(1..5)))
            } else {
                RationalFunction::from_int(r.gen_range(-4..5))
            };
            f = f.add(&inst.generators[i].shifted(&beta, ring).scale(&c), ring);
        }
        assert!(j_normal_form(&f, &b).is_zero(), "seed {seed}");
        assert!(plain_reduce(&f, b.polys(), ring, false).is_zero(), "seed {seed}");
    }
}

#[test]
fn janet_and_plain_normal_forms_agree_on_completed_bases() {
    for inst in linear_corpus(8000, 30, &CorpusShape::default()) {
        let ring = &inst.ring;
        let b = complete(ring, &inst.generators, DivisionKind::JanetLike);
        for t in all_terms(ring, 5) {
            let p = LinearPoly::from_term(t);
            let nf = j_normal_form(&p, &b);
            assert_eq!(nf, plain_reduce(&p, b.polys(), ring, false), "seed {}", inst.seed);
            assert_eq!(j_normal_form(&nf, &b), nf);
            let traced = b.normal_form_traced(&p);
            assert_eq!(traced.remainder, nf);
            let back = traced.remainder.add(&expand_trace(&traced.steps, b.polys(), ring), ring);
            assert_eq!(back, p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plain_reduction_differs_by_an_ideal_member(seed in 0u64..100_000, k in 1i64..7, shift in prop::collection::vec(0u32..4, 3)) {
        let inst = random_linear_system(seed, &CorpusShape::default());
        let ring = &inst.ring;
        let (g, rest) = inst.generators.split_first().unwrap();
        let beta: ExponentVector = shift[..ring.n()].iter().copied().collect();
        let f = g.shifted(&beta, ring).add(&LinearPoly::from_term(ring.term(0, &shift[..ring.n()])), ring);
        let r = plain_reduce_traced(&f, rest, ring, false);
        prop_assert_eq!(r.remainder.add(&expand_trace(&r.steps, rest, ring), ring), f.clone());

        let c = RationalFunction::from_int(k);
        let scaled = plain_reduce(&f.scale(&c), &inst.generators, ring, false);
        let plain = plain_reduce(&f, &inst.generators, ring, false);
        prop_assert_eq!(scaled.is_zero(), plain.is_zero());
    }

    #[test]
    fn criteria_do_not_change_the_output(seed in 0u64..100_000) {
        let inst = random_linear_system(seed, &CorpusShape::default());
        for kind in [DivisionKind::JanetLike, DivisionKind::Janet] {
            let on = janet_like_basis(&inst.generators, &inst.ring, CompletionOptions::with_division(kind)).unwrap();
            let off = CompletionOptions { criteria: false, ..CompletionOptions::with_division(kind) };
            let off = janet_like_basis(&inst.generators, &inst.ring, off).unwrap();
            prop_assert_eq!(on.polys(), off.polys());
        }
    }
}
