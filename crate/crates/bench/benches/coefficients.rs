use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use janetlike::coeff::gcd;
use janetlike::{MultiPoly, RationalFunction};

fn poly(coeffs: &[(i64, &[u32])]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (c, e) in coeffs {
        let mut t = MultiPoly::from_int(*c);
        for (v, k) in e.iter().enumerate() {
            for _ in 0..*k {
                t = &t * &MultiPoly::var(v);
            }
        }
        p = &p + &t;
    }
    p
}

fn gcds(c: &mut Criterion) {
    let g = poly(&[(3, &[2, 1, 0]), (-2, &[0, 1, 1]), (7, &[0, 0, 0])]);
    let a = &g * &poly(&[(1, &[1, 0, 2]), (5, &[0, 3, 0]), (-1, &[0, 0, 0])]);
    let b = &g * &poly(&[(4, &[0, 2, 1]), (-3, &[1, 1, 0]), (2, &[0, 0, 0])]);
    c.bench_function("gcd/trivariate", |bn| bn.iter(|| gcd(black_box(&a), black_box(&b))));
}

fn field_ops(c: &mut Criterion) {
    let n = RationalFunction::var(0);
    let d = RationalFunction::var(1);
    let one = RationalFunction::one();
    let x = n.add(&one).div(&d.sub(&n.mul(&n))).unwrap();
    let y = d.add(&n).div(&n.add(&one).mul(&d)).unwrap();
    c.bench_function("ratfun/add", |b| b.iter(|| black_box(&x).add(black_box(&y))));
    c.bench_function("ratfun/mul", |b| b.iter(|| black_box(&x).mul(black_box(&y))));
}

criterion_group!(benches, gcds, field_ops);
criterion_main!(benches);
