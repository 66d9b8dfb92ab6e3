//! Fixtures shared by the benchmarks.

use janetlike::corpus::{linear_corpus, CorpusShape, LinearInstance};
use janetlike::{parse_linear, LinearPoly, MonomialOrder, Priority, Ranking, Ring, RingSignature};

/// The toric ideal in one function `u` over four indices, degrevlex.
pub fn toric() -> (Ring, Vec<LinearPoly>) {
    let sig = RingSignature::new(&["x", "y", "z", "w"], &["u"], &[] as &[&str]).expect("valid names");
    let ranking = Ranking::new(&sig, MonomialOrder::DegRevLex, Priority::TermOverPosition);
    let ring = Ring::new(sig, ranking).expect("ranking fits");
    let gens = ["u[x+7,y,z,w] - u[x,y+2,z+1,w]", "u[x+4,y,z,w+1] - u[x,y+3,z,w]", "u[x+3,y+1,z,w] - u[x,y,z+1,w+1]"]
        .iter()
        .map(|s| parse_linear(s, &ring).expect("fixture parses"))
        .collect();
    (ring, gens)
}

/// A fixed slice of the random corpus.
pub fn corpus(count: usize) -> Vec<LinearInstance> {
    linear_corpus(1, count, &CorpusShape::default())
}

/// A two-index recurrence with coefficients in the indices and a parameter.
pub fn recurrence() -> (Ring, Vec<LinearPoly>) {
    let sig = RingSignature::new(&["k", "n"], &["f"], &["d"]).expect("valid names");
    let ranking = Ranking::new(&sig, MonomialOrder::DegRevLex, Priority::TermOverPosition);
    let ring = Ring::new(sig, ranking).expect("ranking fits");
    let gens = [
        "(k+1)*f[k+1,n] - (d+k)*f[k,n]",
        "(n+2)*f[k,n+2] - (2*n+d)*f[k,n+1] + (n+d)*f[k,n] + (k+1)*f[k+1,n+1] - (d+k)*f[k,n+1]",
    ]
        .iter()
        .map(|s| parse_linear(s, &ring).expect("fixture parses"))
        .collect();
    (ring, gens)
}
