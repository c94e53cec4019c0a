use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minorcover::chimera::{build_chimera, virtualize, ChimeraSpec};
use minorcover::embedder::{embed_clique, verify_embedding};
use minorcover::faulty::{attempt_clique_embedding, IncompleteBipartite};
use minorcover::graph::Graph;
use minorcover::msc::{msc_complete_bipartite, treewidth_exact, verify_msc};
use minorcover::oracle::is_minor;

fn chimera(c: &mut Criterion) {
    let mut group = c.benchmark_group("chimera");
    for n in [4, 8, 12] {
        let spec = ChimeraSpec::new(n, n, 4).unwrap();
        group.bench_with_input(BenchmarkId::new("build", n), &spec, |b, s| {
            b.iter(|| build_chimera(black_box(s)))
        });
        let g = build_chimera(&spec);
        group.bench_with_input(BenchmarkId::new("virtualize", n), &spec, |b, s| {
            b.iter(|| virtualize(black_box(&g), s))
        });
    }
    group.finish();
}

fn msc(c: &mut Criterion) {
    let mut group = c.benchmark_group("msc");
    for n in [5, 8] {
        group.bench_with_input(BenchmarkId::new("build", n), &n, |b, &n| {
            b.iter(|| msc_complete_bipartite(n, n, black_box(1)).unwrap())
        });
        let seq = msc_complete_bipartite(n, n, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("verify", n), &seq, |b, seq| {
            b.iter(|| verify_msc(black_box(seq)))
        });
    }
    group.finish();
}

fn treewidth(c: &mut Criterion) {
    let mut group = c.benchmark_group("treewidth");
    for n in [4, 6, 7] {
        let g = Graph::complete_bipartite(n, n);
        group.bench_with_input(BenchmarkId::new("complete_bipartite", n), &g, |b, g| {
            b.iter(|| treewidth_exact(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    for n in [3, 4] {
        let host = Graph::complete_bipartite(n, n);
        group.bench_with_input(BenchmarkId::new("yes", n), &host, |b, h| {
            b.iter(|| is_minor(&Graph::complete(n + 1), black_box(h), 10))
        });
        group.bench_with_input(BenchmarkId::new("no", n), &host, |b, h| {
            b.iter(|| is_minor(&Graph::complete(n + 2), black_box(h), 10))
        });
    }
    group.finish();
}

fn embedding(c: &mut Criterion) {
    let mut group = c.benchmark_group("embed");
    for (n, k) in [(3, 13), (6, 25), (12, 49)] {
        let spec = ChimeraSpec::new(n, n, 4).unwrap();
        group.bench_with_input(BenchmarkId::new("clique", k), &spec, |b, s| {
            b.iter(|| embed_clique(s, k, black_box(7)).unwrap())
        });
        let e = embed_clique(&spec, k, 7).unwrap();
        let target = build_chimera(&spec);
        let logical = Graph::complete(k);
        group.bench_with_input(BenchmarkId::new("verify", k), &e, |b, e| {
            b.iter(|| verify_embedding(&logical, &target, black_box(e)))
        });
    }
    let k55e = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)]).unwrap();
    group.bench_function("faulty_attempt_k55e", |b| {
        b.iter(|| attempt_clique_embedding(&k55e, 100, black_box(3)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, chimera, msc, treewidth, oracle, embedding);
criterion_main!(benches);
