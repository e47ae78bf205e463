use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ietkit::golden;
use ietkit::iet::Precision;
use ietkit::rauzy::{compose_path, find_closed_primitive_paths, induce, rauzy_class};
use ietkit::reduce::{full_reduction, ReductionOptions};
use ietkit::subst::{find_witness_pair, DEFAULT_WITNESS_BUDGET};
use ietkit::Permutation;

fn combinatorics(c: &mut Criterion) {
    let path = golden::path();
    c.bench_function("compose_path golden", |b| b.iter(|| compose_path(black_box(&path))));
    let sym7 = Permutation::tau_sym(7).unwrap();
    c.bench_function("rauzy_class m=7", |b| b.iter(|| rauzy_class(black_box(&sym7)).unwrap()));
    let sym5 = golden::start();
    c.bench_function("closed paths m=5 len<=12", |b| {
        b.iter(|| find_closed_primitive_paths(black_box(&sym5), 12).unwrap())
    });
}

fn arithmetic(c: &mut Criterion) {
    let per = golden::golden_iet(Precision::default()).unwrap();
    c.bench_function("golden_iet construction", |b| {
        b.iter(|| golden::golden_iet(Precision::default()).unwrap())
    });
    c.bench_function("induction 120 steps", |b| b.iter(|| induce(per.iet.pair(), 120).unwrap()));
    let (w1, _) = golden::witness_words();
    c.bench_function("recurrence word check", |b| b.iter(|| per.iet.is_recurrence_word(black_box(&w1)).unwrap()));
    let sets = golden::start().cyclic_sets();
    c.bench_function("witness search golden", |b| {
        b.iter(|| find_witness_pair(&golden::sigma(), &sets, DEFAULT_WITNESS_BUDGET).unwrap())
    });
}

fn reduction(c: &mut Criterion) {
    let mut g = c.benchmark_group("reduction");
    g.sample_size(10);
    let opts = ReductionOptions { seed: 1, ..Default::default() };
    g.bench_function("full_reduction m=7", |b| b.iter(|| full_reduction(7, &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, combinatorics, arithmetic, reduction);
criterion_main!(benches);
