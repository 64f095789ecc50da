use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use metaquiver::exec::Execution;
use metaquiver::groups::{choose_representatives, MetacyclicParams, RepSystem};
use metaquiver::mckay::{mckay_abelian, mckay_metacyclic};
use metaquiver::superpotential::superpotential_with;

fn bench(c: &mut Criterion) {
    let m21 = {
        let p = MetacyclicParams::new(21, 4, 3, 0).unwrap();
        RepSystem::with_representatives(&p, &[0, 4, 7, 8, 9, 12, 13, 14, 17]).unwrap()
    };
    let hat32 = choose_representatives(&MetacyclicParams::family_m_hat(3, 2).unwrap()).unwrap();
    let cases = [
        ("M(3,1)/G", mckay_metacyclic(&m21, false).unwrap()),
        ("M^(3,2)/A'", mckay_abelian(hat32.params(), true).unwrap()),
        ("M^(3,2)/G'", mckay_metacyclic(&hat32, true).unwrap()),
    ];
    let mut group = c.benchmark_group("superpotential");
    group.sample_size(10);
    for (name, data) in &cases {
        for (label, exec) in [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)] {
            group.bench_with_input(BenchmarkId::new(label, name), data, |b, d| {
                b.iter(|| superpotential_with(black_box(d), exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
