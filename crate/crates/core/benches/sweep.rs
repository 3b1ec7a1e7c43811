use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rsdh_core::{run_sweep, CodeKind, Family, Field, KSelect, Methods, Parallelism, SweepConfig};

fn config(family: Family, parallelism: Parallelism) -> SweepConfig {
    SweepConfig {
        fields: [(7, 1), (2, 3), (3, 2), (11, 1)]
            .into_iter()
            .map(|(p, m)| Arc::new(Field::new(p, m, None).unwrap()))
            .collect(),
        kinds: vec![CodeKind::Standard, CodeKind::Primitive],
        k: KSelect::All,
        family,
        methods: Methods::default(),
        oracle_cap: 1_000_000,
        parallelism,
        seed: 1,
    }
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let families = [
        ("k1", Family::DegreeK1),
        ("k2", Family::DegreeK2),
        ("inverse", Family::InverseMonomial { samples: 4 }),
    ];
    for (name, family) in families {
        for (mode, parallelism) in [
            ("sequential", Parallelism::Sequential),
            ("parallel", Parallelism::Parallel),
        ] {
            let cfg = config(family, parallelism);
            group.bench_with_input(BenchmarkId::new(name, mode), &cfg, |b, cfg| {
                b.iter(|| run_sweep(cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
