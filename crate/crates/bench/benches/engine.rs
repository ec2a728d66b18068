use ainf_core::basis::basis_exact;
use ainf_core::eval::checks::{check_ainf_morphism, compose_morphisms, push_forward};
use ainf_core::eval::samples::{random_ainf, random_morphism, square_zero};
use ainf_core::homology::homology;
use ainf_core::kernel::Ring;
use ainf_core::operad::generators;
use ainf_core::differential::d_squared_failures;
use ainf_core::Presentation;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis(c: &mut Criterion) {
    let mut g = c.benchmark_group("basis");
    for n in [5, 6, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| basis_exact(Presentation::AInf, n, 0).unwrap()));
    }
    g.finish();
}

fn d_squared(c: &mut Criterion) {
    let mut g = c.benchmark_group("dsq");
    g.sample_size(10);
    for (pres, n) in [(Presentation::AInf, 7), (Presentation::F1, 6), (Presentation::AHu, 5)] {
        let gens = generators(pres, n);
        g.bench_function(format!("{pres}-{n}"), |b| b.iter(|| d_squared_failures(pres, &gens).unwrap()));
    }
    g.finish();
}

fn homology_small(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    g.bench_function("ainf-5", |b| b.iter(|| homology(Presentation::AInf, 5, -3, 1, 0, Ring::Rationals).unwrap()));
    g.bench_function("f1-4", |b| b.iter(|| homology(Presentation::F1, 4, -3, 1, 0, Ring::Rationals).unwrap()));
    g.finish();
}

fn evaluator(c: &mut Criterion) {
    let ring = Ring::Prime(101);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (a, _) = random_ainf(&mut rng, ring, &square_zero(ring), 4);
    let f = random_morphism(&mut rng, ring, &a.module, 4);
    let b = push_forward(ring, &a, &f, 4).unwrap();
    let g = random_morphism(&mut rng, ring, &b.module, 4);
    let cc = push_forward(ring, &b, &g, 4).unwrap();
    let mut group = c.benchmark_group("evaluator");
    group.sample_size(10);
    group.bench_function("check-morphism-4", |bn| bn.iter(|| check_ainf_morphism(ring, &a, &f, &b, 4).unwrap()));
    group.bench_function("compose-4", |bn| {
        bn.iter(|| compose_morphisms(ring, (&a, &b, &cc), &f, &g, Presentation::F1, 4).unwrap())
    });
    group.finish();
}

criterion_group!(benches, basis, d_squared, homology_small, evaluator);
criterion_main!(benches);
