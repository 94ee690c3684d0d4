//! Sequential (`jobs = 1`) against parallel (`jobs = 0`, one thread per core)
//! for the two batch drivers. Without the `parallel` feature both rows run
//! sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadindex::arith::FactorBudget;
use quadindex::batch::{check_tuples, sample_quadrinomials, scan, ScanFilter, ScanOptions, ScanRanges, Span, VerifyOptions};

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    let ranges = ScanRanges {
        n: Span { lo: 5, hi: 6 },
        a: Span { lo: 1, hi: 9 },
        b: Span { lo: -5, hi: 5 },
        c: Span { lo: -5, hi: 5 },
    };
    for (name, jobs) in [("sequential", 1), ("parallel", 0)] {
        let opts = ScanOptions { budget: FactorBudget::default(), seed: 1, jobs, filter: ScanFilter::All };
        group.bench_with_input(BenchmarkId::new(name, "n5-6"), &opts, |b, o| {
            b.iter(|| scan(&ranges, o).unwrap());
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    let base = VerifyOptions { samples: 64, seed: 3, ..Default::default() };
    let tuples = sample_quadrinomials(&base);
    for (name, jobs) in [("sequential", 1), ("parallel", 0)] {
        let opts = VerifyOptions { jobs, ..base.clone() };
        group.bench_with_input(BenchmarkId::new(name, "64-samples"), &opts, |b, o| {
            b.iter(|| check_tuples(&tuples, o).unwrap());
        });
    }
    group.finish();
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_scan, bench_verify
);
criterion_main!(benches);
