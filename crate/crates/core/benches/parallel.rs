use criterion::{criterion_group, criterion_main, Criterion};

use invtqft::corpus::{builtin_corpus, builtin_ineligible, run_harness};
use invtqft::par::Exec;

fn harness(c: &mut Criterion) {
    let mut corpus = builtin_corpus();
    corpus.extend(builtin_ineligible());
    let mut g = c.benchmark_group("harness");
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| run_harness(&corpus, Exec::Sequential)));
    if Exec::is_parallel_available() {
        g.bench_function("parallel", |b| b.iter(|| run_harness(&corpus, Exec::Parallel)));
    }
    g.finish();
}

criterion_group!(benches, harness);
criterion_main!(benches);
