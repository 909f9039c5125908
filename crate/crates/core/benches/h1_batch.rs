use std::hint::black_box;

use braidcover::algebra::Permutation;
use braidcover::braid::BraidWord;
use braidcover::homology::branched_h1_batch;
use braidcover::LabeledBraid;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn twisted(n: usize) -> LabeledBraid {
    let k = n + 1;
    let labels = (1..=n)
        .flat_map(|i| {
            let t = Permutation::transposition(k, i, i + 1);
            [t.clone(), t]
        })
        .collect();
    LabeledBraid::new(BraidWord::full_twist(2 * n), k, labels).unwrap()
}

fn corpus(size: usize) -> Vec<LabeledBraid> {
    let mut out = Vec::with_capacity(size);
    let mut n = 1;
    while out.len() < size {
        let lb = twisted(n);
        let (joined, _) = lb.connect_all().unwrap();
        out.push(lb);
        out.push(joined.stabilize_branch_locus(0).unwrap());
        n = n % 6 + 1;
    }
    out.truncate(size);
    out
}

fn bench(c: &mut Criterion) {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let mut group = c.benchmark_group("branched_h1");
    group.sample_size(10);
    for size in [8, 32, 128] {
        let data = corpus(size);
        group.bench_with_input(BenchmarkId::new("rayon", size), &data, |b, d| {
            b.iter(|| branched_h1_batch(black_box(d)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", size), &data, |b, d| {
            b.iter(|| one.install(|| branched_h1_batch(black_box(d))))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
