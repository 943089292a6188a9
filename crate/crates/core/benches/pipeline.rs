use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use oddcolor::oracle::{has_odd_expansion, OracleBudget};
use oddcolor::pipeline::color_graph;
use oddcolor::{generators, par, Graph, Parallelism};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn corpus(count: usize, n: usize) -> Vec<Graph> {
    (0..count as u64)
        .map(|seed| generators::connected_gnp(n, [0.05, 0.1, 0.3][seed as usize % 3], seed))
        .collect()
}

fn batch(c: &mut Criterion) {
    let graphs = corpus(64, 60);
    let mut group = c.benchmark_group("color_batch");
    for t in [3, 5] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, t), &t, |b, &t| {
                b.iter(|| {
                    par::map(&graphs, mode, |g| {
                        color_graph(g, t, Parallelism::Sequential).is_ok()
                    })
                })
            });
        }
    }
    group.finish();
}

fn components(c: &mut Criterion) {
    // many components: parallelism inside a single call
    let g = generators::gnp(400, 0.004, 11);
    let mut group = c.benchmark_group("color_components");
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| color_graph(&g, 4, mode).is_ok()));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let cases = [
        ("petersen_t4", generators::petersen(), 4),
        ("c9_t4", generators::cycle(9), 4),
    ];
    let budget = OracleBudget {
        max_n: 10,
        ..OracleBudget::default()
    };
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for (case, g, t) in &cases {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, case), t, |b, &t| {
                b.iter(|| has_odd_expansion(g, t, budget, mode).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, batch, components, oracle);
criterion_main!(benches);
