use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use solvcoh::catalog;
use solvcoh::cohomology::cohomology_dims;
use solvcoh::filiform::{filiform_cohomology_diagram, gamma_s_n};
use solvcoh::gamma::total_cohomology;
use solvcoh::rootsys::{verify_kostant, RootSystem, RootType};
use solvcoh::LieModule;

fn cohomology(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology");
    for name in ["sec4_1", "borel_G2", "filiform6"] {
        let l = catalog::build(name).unwrap().algebra;
        let triv = LieModule::trivial(&l);
        group.bench_function(name, |b| b.iter(|| cohomology_dims(black_box(&l), &triv).unwrap()));
    }
    group.finish();
}

fn total(c: &mut Criterion) {
    let mut group = c.benchmark_group("total_cohomology");
    group.sample_size(10);
    let l = catalog::build("sec4_1").unwrap().algebra;
    group.bench_function("sec4_1", |b| b.iter(|| total_cohomology(black_box(&l)).unwrap()));
    group.bench_function("s4", |b| b.iter(|| gamma_s_n(black_box(4)).unwrap()));
    group.bench_function("f5_diagram", |b| b.iter(|| filiform_cohomology_diagram(black_box(5)).unwrap()));
    let g2 = RootSystem::new(RootType::G2);
    group.bench_function("kostant_G2", |b| b.iter(|| verify_kostant(black_box(&g2)).unwrap()));
    group.finish();
}

criterion_group!(benches, cohomology, total);
criterion_main!(benches);
