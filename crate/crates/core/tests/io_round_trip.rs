use janetlike::corpus::{linear_corpus, random_diff_poly, random_linear_poly, round_trip_ring, rng, CorpusShape};
use janetlike::{
    flip_direction, format_diffpoly, format_linear, parse_linear, parse_linear_system, parse_poly, pol2shift,
    pol2shift_grouped, shift2pol, Error, LinearPoly, Ring, RingSignature, ShiftDirection,
};

#[test]
fn equation_syntax_round_trips() {
    let ring = round_trip_ring();
    let mut r = rng(42);
    for _ in 0..1000 {
        let p = random_linear_poly(&mut r, &ring);
        let text = format_linear(&p, &ring);
        assert_eq!(parse_linear(&text, &ring).unwrap(), p, "{text}");
        let q = random_diff_poly(&mut r, &ring);
        let text = format_diffpoly(&q, &ring);
        assert_eq!(parse_poly(&text, &ring).unwrap(), q, "{text}");
    }
}

#[test]
fn operator_syntax_round_trips() {
    let ring = round_trip_ring();
    let mut r = rng(43);
    for _ in 0..1000 {
        let p = random_linear_poly(&mut r, &ring);
        let grouped = pol2shift_grouped(&p, &ring);
        assert_eq!(parse_linear(&grouped, &ring).unwrap(), p, "{grouped}");
        let funcs: Vec<usize> = p.functions().collect();
        if funcs.len() == 1 {
            let name = &ring.signature().function_names()[funcs[0]];
            let op = pol2shift(&p, &ring).unwrap();
            assert_eq!(&shift2pol(&op, name, &ring).unwrap(), &p, "{op}");
        }
    }
}

#[test]
fn flipping_twice_is_the_identity() {
    for inst in linear_corpus(300, 50, &CorpusShape { variable_coefficients: true, ..CorpusShape::default() }) {
        let (flipped, fr) = flip_direction(&inst.generators, &inst.ring).unwrap();
        assert_eq!(fr.direction(), ShiftDirection::Backward);
        let texts: Vec<String> = flipped.iter().map(|p| format_linear(p, &fr)).collect();
        let (reparsed, _) = parse_linear_system(&texts, &fr, false).unwrap();
        assert_eq!(reparsed, flipped);
        let (back, br) = flip_direction(&flipped, &fr).unwrap();
        assert_eq!(br.direction(), ShiftDirection::Forward);
        assert_eq!(back, inst.generators, "seed {}", inst.seed);
    }
}

#[test]
fn parse_errors_carry_locations() {
    let ring = Ring::with_default_ranking(RingSignature::new(&["x", "y"], &["u"], &[] as &[&str]).unwrap());
    let cases = [("u[x-1,y]", 1), ("u[x,y] + q[x,y]", 10), ("2*/u", 3), ("u[x,y] +", 9), ("(u[x,y]", 8)];
    for (src, column) in cases {
        match parse_linear(src, &ring) {
            Err(Error::Parse { location, .. }) => assert_eq!(location.column, column, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
    assert_eq!(
        parse_linear("u[x+1,y] - u[x,y]", &ring).unwrap().len(),
        2,
    );
    let p: LinearPoly = shift2pol("Tx^2*Ty", "u", &ring).unwrap();
    assert_eq!(pol2shift(&p, &ring).unwrap(), "Tx^2*Ty*u");
}
