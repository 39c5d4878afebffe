use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use zipzeta::btgl::{bt_datum, BTParams};
use zipzeta::fforacle::{enumerate_census, CensusOptions, FqField};
use zipzeta::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (p, k, h, d) in [(2, 2, 2, 1), (2, 1, 3, 1), (3, 2, 2, 1)] {
        let field = FqField::build_field(p, k).unwrap();
        for (name, exec) in MODES {
            let id = BenchmarkId::new(name, format!("q{}_h{h}_d{d}", field.order()));
            group.bench_with_input(id, &field, |b, f| {
                b.iter(|| enumerate_census(f, h, d, CensusOptions { exec, ..Default::default() }).unwrap())
            });
        }
    }
    group.finish();
}

fn classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    for (h, d) in [(6, 3), (7, 3)] {
        let datum = bt_datum(&BTParams::new(h, d, 2, 1).unwrap()).unwrap();
        for (name, exec) in MODES {
            group.bench_function(BenchmarkId::new(name, format!("gl{h}_d{d}")), |b| {
                b.iter(|| datum.classify_with(exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, census, classify);
criterion_main!(benches);
