use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ncaseed::assume::Assumptions;
use ncaseed::classify::{declare_standard_symbols, omega_b, reproduce_table, TableId};
use ncaseed::g2solver::relations_from_pair;
use ncaseed::geometry::{fl_ii, tprime1_i};
use ncaseed::segre::is_as_regular;
use ncaseed::superpot::twisting_matrix;
use ncaseed::{parse_ncpoly, Scalar};

fn parsing(c: &mut Criterion) {
    let text = "x^2*y^2 + x*y^2*x + y^2*x^2 + y*x^2*y - 2*x*y*x*y - 2*y*x*y*x";
    c.bench_function("parse omega_B", |b| {
        b.iter(|| parse_ncpoly(black_box(text)).unwrap())
    });
}

fn potentials(c: &mut Criterion) {
    let w = omega_b();
    c.bench_function("twisting matrix of omega_B", |b| {
        b.iter(|| twisting_matrix(black_box(&w)).unwrap())
    });
    c.bench_function("AS-regularity of omega_B", |b| {
        b.iter(|| is_as_regular(black_box(&w), &Assumptions::new()).unwrap())
    });
}

fn relations(c: &mut Criterion) {
    declare_standard_symbols();
    let (a, bt) = (Scalar::param("alpha"), Scalar::param("beta"));
    let asm = Assumptions::new().assume_nonzero(&a).assume_nonzero(&bt);
    let fl = fl_ii(&a, &bt);
    let one = Scalar::one();
    let tp = tprime1_i(&one, &a, &one);
    c.bench_function("relations of FL(ii)", |b| {
        b.iter(|| relations_from_pair(black_box(&fl), &asm).unwrap())
    });
    c.bench_function("relations of T'1(i)", |b| {
        b.iter(|| relations_from_pair(black_box(&tp), &asm).unwrap())
    });
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    for id in [TableId::One, TableId::Two, TableId::Four] {
        g.bench_function(id.name(), |b| b.iter(|| reproduce_table(black_box(id))));
    }
    g.finish();
}

criterion_group!(benches, parsing, potentials, relations, tables);
criterion_main!(benches);
