//! Microbenchmarks of the search kernels on representative class members.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use folkman_core::arrowing::{arrows_uni, ArrowSpec};
use folkman_core::canon::canonical_certificate;
use folkman_core::search::{
    edge_removal_closure, extend_independent, is_plus_kt, maximal_ktfree_subsets, AlphaMode,
    ExtensionJob,
};
use folkman_core::Graph;

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Dense graphs resemble the class members the pipeline actually touches.
fn dense_member(rng: &mut StdRng, n: usize) -> Graph {
    random_graph(rng, n, 0.85)
}

fn bench_clique_number(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(1);
    let graphs: Vec<Graph> = (0..16).map(|_| dense_member(&mut rng, 16)).collect();
    c.bench_function("clique_number_n16_dense", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(g.clique_number());
            }
        })
    });
}

fn bench_certificate(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(2);
    let graphs: Vec<Graph> = (0..16).map(|_| dense_member(&mut rng, 14)).collect();
    c.bench_function("canonical_certificate_n14", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(canonical_certificate(g));
            }
        })
    });
}

fn bench_arrows_uni(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(3);
    let spec = ArrowSpec::new(7, 6).unwrap();
    let graphs: Vec<Graph> = (0..8).map(|_| dense_member(&mut rng, 14)).collect();
    c.bench_function("arrows_uni_7_6_n14", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(arrows_uni(g, &spec));
            }
        })
    });
}

fn bench_plus_kt(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(4);
    let graphs: Vec<Graph> = (0..32).map(|_| dense_member(&mut rng, 13)).collect();
    c.bench_function("is_plus_kt_6_n13", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(is_plus_kt(g, 6));
            }
        })
    });
}

fn bench_subsets(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(5);
    let graphs: Vec<Graph> = (0..8).map(|_| dense_member(&mut rng, 13)).collect();
    c.bench_function("maximal_k6free_subsets_n13", |b| {
        b.iter(|| {
            for g in &graphs {
                black_box(maximal_ktfree_subsets(g, 6));
            }
        })
    });
}

fn bench_stage_pair(c: &mut Criterion) {
    // the first extension/closure pair of the main search
    let k6 = Graph::complete(6).unwrap();
    let seeds = vec![k6.clone(), k6.remove_edge(0, 1).unwrap()];
    let spec = ArrowSpec::new(4, 6).unwrap();
    c.bench_function("extend_and_close_n8_class", |b| {
        b.iter(|| {
            let job = ExtensionJob {
                seeds: seeds.clone(),
                k: 2,
                spec,
                q: 7,
                alpha_mode: AlphaMode::Unrestricted,
                audit_full_tuples: false,
            };
            let maximal = extend_independent(&job).unwrap();
            black_box(edge_removal_closure(
                &maximal,
                &spec,
                7,
                6,
                AlphaMode::Unrestricted,
                false,
            ))
        })
    });
}

criterion_group!(
    benches,
    bench_clique_number,
    bench_certificate,
    bench_arrows_uni,
    bench_plus_kt,
    bench_subsets,
    bench_stage_pair
);
criterion_main!(benches);
