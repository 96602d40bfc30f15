use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use equising_core::ideal::{colength, intersection_multiplicity, tjurina_ideal, ColengthConfig};
use equising_core::invariants::{gamma_alpha_search, Alpha, SearchBudget};
use equising_core::make_jet;

fn colengths(c: &mut Criterion) {
    let cfg = ColengthConfig::default();
    let mut group = c.benchmark_group("tjurina_colength");
    for text in ["y^2 - x^7", "x^3 + y^5", "x^4 + y^5 + x^2*y^3"] {
        let f = make_jet(text, 64).unwrap();
        let ideal = tjurina_ideal(&f).unwrap();
        group.bench_function(text, |b| b.iter(|| colength(black_box(&ideal), cfg).unwrap()));
    }
    group.finish();

    let f = make_jet("y^2 - x^5", 64).unwrap();
    let g = make_jet("y^3 - x^2 + x*y^4", 64).unwrap();
    c.bench_function("intersection_multiplicity", |b| {
        b.iter(|| intersection_multiplicity(black_box(&f), black_box(&g), cfg).unwrap())
    });
}

fn gamma_search(c: &mut Criterion) {
    let budget = SearchBudget::default();
    let alpha = Alpha::one();
    let mut group = c.benchmark_group("gamma_search");
    group.sample_size(10);
    for k in [2, 4, 6] {
        let f = make_jet(&format!("y^2 - x^{}", k + 1), 64).unwrap();
        let ideal = tjurina_ideal(&f).unwrap();
        group.bench_function(format!("A_{k}"), |b| {
            b.iter(|| gamma_alpha_search(black_box(&f), &ideal, &alpha, &budget).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, colengths, gamma_search);
criterion_main!(benches);
