//! Compares the rayon pool against a single worker on the heavier pipeline
//! stages. Build with `--no-default-features` for the fully sequential code
//! path (the "pool" rows then run sequentially too).

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use posetmorse::cellular::cellular_chain_complex;
use posetmorse::flow::morse_complex;
use posetmorse::matching::classify_poset;
use posetmorse::par;
use posetmorse::random::random_face_poset;
use posetmorse::search::{greedy_matching, SearchPolicy};
use posetmorse::simplicial::{face_poset, simplex_boundary};
use posetmorse::Poset;

fn instances() -> Vec<(&'static str, Poset)> {
    vec![
        ("sphere4", face_poset(&simplex_boundary(4)).unwrap()),
        ("random3d", random_face_poset(5, 3, 12)),
    ]
}

fn compare(c: &mut Criterion, stage: &str, run: impl Fn(&Poset) + Sync) {
    let mut group = c.benchmark_group(stage);
    group.sample_size(20);
    for (name, x) in instances() {
        group.bench_with_input(BenchmarkId::new("pool", name), &x, |b, x| b.iter(|| run(black_box(x))));
        group.bench_with_input(BenchmarkId::new("one_thread", name), &x, |b, x| {
            b.iter(|| par::with_threads(1, || run(black_box(x))))
        });
    }
    group.finish();
}

fn bench(c: &mut Criterion) {
    let policy = SearchPolicy {
        admissibility_filter: true,
        ..SearchPolicy::default()
    };
    compare(c, "classify", |x| {
        black_box(classify_poset(x));
    });
    compare(c, "cellular_complex", |x| {
        black_box(cellular_chain_complex(x, true).unwrap());
    });
    compare(c, "search", |x| {
        black_box(greedy_matching(x, &policy));
    });
    compare(c, "morse_complex", |x| {
        let m = greedy_matching(x, &policy);
        black_box(morse_complex(x, &m).unwrap());
    });
}

criterion_group!(benches, bench);
criterion_main!(benches);
