use std::collections::BTreeSet;

use janetlike::corpus::{linear_corpus, CorpusShape};
use janetlike::{
    buchberger_oracle, extract_reduced_gb, janet_like_basis, CompletionOptions, DivisionKind, LinearPoly, Term,
};

fn lms(polys: &[LinearPoly]) -> BTreeSet<Term> {
    polys.iter().map(|p| p.lm().unwrap().clone()).collect()
}

#[test]
fn inclusion_characterization_oracle_and_criteria() {
    for inst in linear_corpus(1000, 60, &CorpusShape::default()) {
        let ring = &inst.ring;
        let f = &inst.generators;
        let jl = janet_like_basis(f, ring, CompletionOptions::default()).unwrap();
        let jb = janet_like_basis(f, ring, CompletionOptions::with_division(DivisionKind::Janet)).unwrap();
        let gb = extract_reduced_gb(&jl);
        assert!(lms(&gb).is_subset(&lms(jl.polys())), "seed {}", inst.seed);
        assert!(lms(jl.polys()).is_subset(&lms(jb.polys())), "seed {}", inst.seed);
        assert!(gb.len() <= jl.len() && jl.len() <= jb.len());
        assert!(jl.characterization_violations().is_empty(), "seed {}", inst.seed);
        assert!(jb.characterization_violations().is_empty(), "seed {}", inst.seed);
        assert_eq!(gb, buchberger_oracle(f, ring), "seed {}", inst.seed);
        assert_eq!(extract_reduced_gb(&jb), gb, "seed {}", inst.seed);
        let off = CompletionOptions { criteria: false, ..CompletionOptions::default() };
        let plain = janet_like_basis(f, ring, off).unwrap();
        assert_eq!(plain.polys(), jl.polys(), "seed {}", inst.seed);
    }
}

