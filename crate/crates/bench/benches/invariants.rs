use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rotknot_bench::{diagrams, torus};
use rotknot_core::bracket::{binary_bracket, rotational_bracket, standard_bracket};
use rotknot_core::parity::parity_bracket;
use rotknot_core::quantum::{bracket_model, evaluate, homflypt_model};

fn brackets(c: &mut Criterion) {
    let mut g = c.benchmark_group("brackets");
    for (name, d) in diagrams() {
        g.bench_with_input(BenchmarkId::new("standard", name), &d, |b, d| b.iter(|| standard_bracket(black_box(d))));
        g.bench_with_input(BenchmarkId::new("rotational", name), &d, |b, d| b.iter(|| rotational_bracket(black_box(d))));
        g.bench_with_input(BenchmarkId::new("binary", name), &d, |b, d| b.iter(|| binary_bracket(black_box(d))));
    }
    for n in [5, 8] {
        let d = torus(n);
        g.bench_with_input(BenchmarkId::new("standard-torus", n), &d, |b, d| b.iter(|| standard_bracket(black_box(d))));
    }
    g.finish();
}

fn tensors(c: &mut Criterion) {
    let mut g = c.benchmark_group("evaluate");
    let bracket = bracket_model();
    let h2 = homflypt_model(2);
    for (name, d) in diagrams() {
        g.bench_with_input(BenchmarkId::new("bracket-model", name), &d, |b, d| b.iter(|| evaluate(black_box(d), &bracket)));
        g.bench_with_input(BenchmarkId::new("homflypt-2", name), &d, |b, d| b.iter(|| evaluate(black_box(d), &h2)));
    }
    g.finish();
}

fn parity(c: &mut Criterion) {
    let mut g = c.benchmark_group("parity");
    for (name, d) in diagrams() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| b.iter(|| parity_bracket(black_box(d))));
    }
    g.finish();
}

criterion_group!(benches, brackets, tensors, parity);
criterion_main!(benches);
