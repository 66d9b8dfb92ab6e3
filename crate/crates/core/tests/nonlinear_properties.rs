use janetlike::corpus::{linear_corpus, rng, CorpusShape};
use janetlike::nonlinear::normal_form;
use janetlike::{
    extract_reduced_gb, janet_like_basis, j_normal_form, parse_poly, s_polynomials, standard_basis, CompletionOptions,
    CompletionStatus, DiffPoly, DifferenceMonomial, ExponentVector, RationalFunction, Ring, RingSignature, Term,
};
use rand::Rng as _;

fn s_poly_characterization(g: &[DiffPoly], ring: &Ring) -> usize {
    let mut bad = 0;
    for i in 0..g.len() {
        for j in i..g.len() {
            for pair in s_polynomials(&g[i], &g[j], ring) {
                assert!(pair.validate(ring));
                if !normal_form(&pair.spoly, g, ring).is_zero() {
                    bad += 1;
                }
            }
        }
    }
    bad
}

#[test]
fn linear_inputs_match_the_linear_engine() {
    let shape = CorpusShape { max_generators: 3, ..CorpusShape::default() };
    for inst in linear_corpus(9000, 25, &shape) {
        let ring = &inst.ring;
        let input: Vec<DiffPoly> = inst.generators.iter().map(DiffPoly::from_linear).collect();
        let sb = standard_basis(&input, ring, 200).unwrap();
        assert_eq!(sb.status, CompletionStatus::Complete, "seed {}", inst.seed);
        let jl = janet_like_basis(&inst.generators, ring, CompletionOptions::default()).unwrap();
        for g in &sb.basis {
            let lin = g.to_linear(ring).expect("linear input stays linear");
            assert!(j_normal_form(&lin, &jl).is_zero(), "seed {}", inst.seed);
        }
        for g in jl.polys() {
            assert!(normal_form(&DiffPoly::from_linear(g), &sb.basis, ring).is_zero(), "seed {}", inst.seed);
        }
        let gb: Vec<_> = sb.basis.iter().map(|g| g.to_linear(ring).unwrap()).collect();
        assert_eq!(gb, extract_reduced_gb(&jl), "seed {}", inst.seed);
        assert_eq!(s_poly_characterization(&sb.basis, ring), 0);
    }
}

fn ring_x() -> Ring {
    Ring::with_default_ranking(RingSignature::new(&["x"], &["y"], &[]).unwrap())
}

#[test]
fn nonlinear_examples_satisfy_the_characterization() {
    let r = ring_x();
    let systems: [&[&str]; 4] = [
        &["y*y[x+1]"],
        &["y[x+1] - y"],
        &["y[x+1]^2 - y", "y[x+2] - y[x+1]"],
        &["y[x+1]*y - 1", "y^2 - 1"],
    ];
    for sys in systems {
        let f: Vec<DiffPoly> = sys.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        let sb = standard_basis(&f, &r, 50).unwrap();
        assert_eq!(sb.status, CompletionStatus::Complete, "{sys:?}");
        assert_eq!(s_poly_characterization(&sb.basis, &r), 0, "{sys:?}");
        for p in &f {
            assert!(normal_form(p, &sb.basis, &r).is_zero(), "{sys:?}");
        }
    }
}

fn small_poly(r: &mut rand_chacha::ChaCha8Rng, ring: &Ring) -> DiffPoly {
    let terms: Vec<(DifferenceMonomial, RationalFunction)> = (0..2)
        .map(|_| {
            let factors: Vec<(Term, u32)> = (0..r.gen_range(1..=2))
                .map(|_| (Term::new(r.gen_range(0..2), ExponentVector::from_slice(&[r.gen_range(0..3)])), 1))
                .collect();
            (DifferenceMonomial::from_factors(ring, factors), RationalFunction::from_int(r.gen_range(1..4)))
        })
        .collect();
    DiffPoly::from_terms(ring, terms)
}

#[test]
fn random_complete_outputs_decide_membership() {
    let ring = Ring::with_default_ranking(RingSignature::new(&["x"], &["u", "v"], &[] as &[&str]).unwrap());
    let mut complete = 0;
    for seed in 0..40u64 {
        let mut r = rng(seed);
        let f: Vec<DiffPoly> = (0..2).map(|_| small_poly(&mut r, &ring)).filter(|p| !p.is_zero()).collect();
        if f.is_empty() {
            continue;
        }
        let sb = standard_basis(&f, &ring, 3).unwrap();
        if sb.status != CompletionStatus::Complete {
            continue;
        }
        complete += 1;
        assert_eq!(s_poly_characterization(&sb.basis, &ring), 0, "seed {seed}");
        let mut member = DiffPoly::zero();
        for g in &sb.basis {
            let t = Term::new(r.gen_range(0..2), ExponentVector::from_slice(&[r.gen_range(0..3)]));
            let m = DifferenceMonomial::from_term(t);
            let theta = ExponentVector::from_slice(&[r.gen_range(0..3)]);
            let c = RationalFunction::from_int(r.gen_range(1..5));
            member = member.add(&g.shifted(&theta, &ring).mul_monomial(&m, &ring).scale(&c), &ring);
        }
        assert!(normal_form(&member, &sb.basis, &ring).is_zero(), "seed {seed}");
        for p in &f {
            assert!(normal_form(p, &sb.basis, &ring).is_zero(), "seed {seed}");
        }
    }
    assert!(complete >= 5, "only {complete} random systems completed");
}

#[test]
fn budget_exhaustion_is_a_result() {
    let r = ring_x();
    let f = vec![parse_poly("y[x+1]*y - y[x+2]", &r).unwrap(), parse_poly("y[x+3]^2 - y", &r).unwrap()];
    let sb = standard_basis(&f, &r, 1).unwrap();
    assert_eq!(sb.status, CompletionStatus::BudgetExhausted);
    assert!(sb.basis.len() >= 2);
    assert!(standard_basis(&f, &r, 0).is_err());
}
