//! Sequential against parallel runs of the batch oracles.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use computads::counterexample::{build_paper_objects, run_counterexample};
use computads::oracle::{
    check_coequalizer_up, check_product_up, generate_computads_with, GeneratorBounds, OracleConfig,
};
use computads::par::{self, Strategy};
use computads::{enumerate_pairings, Label, Multiset};

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn name(s: Strategy) -> &'static str {
    match s {
        Strategy::Sequential => "sequential",
        Strategy::Parallel => "parallel",
    }
}

fn generator(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_computads");
    for bounds in [GeneratorBounds::new(3, 2, 2), GeneratorBounds::new(5, 2, 2)] {
        for s in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name(s), bounds), &bounds, |b, &bounds| {
                b.iter(|| generate_computads_with(black_box(bounds), s).len())
            });
        }
    }
    group.finish();
}

fn product_up(c: &mut Criterion) {
    let o = build_paper_objects();
    let art = run_counterexample().unwrap().artifacts;
    let mut group = c.benchmark_group("check_product_up");
    let bounds = GeneratorBounds::new(3, 2, 2);
    for s in STRATEGIES {
        let config = OracleConfig::new(bounds).with_strategy(s);
        group.bench_function(BenchmarkId::new(name(s), bounds), |b| {
            b.iter(|| {
                check_product_up(&o.a, &o.b, &art.product_ab, &config)
                    .unwrap()
                    .passed()
            })
        });
    }
    group.finish();
}

fn coequalizer_up(c: &mut Criterion) {
    let art = run_counterexample().unwrap().artifacts;
    let (p1, p2) = &art.coequalizer_p.pair;
    let mut group = c.benchmark_group("check_coequalizer_up");
    group.sample_size(10);
    let bounds = GeneratorBounds::new(4, 2, 2);
    for s in STRATEGIES {
        let config = OracleConfig::new(bounds).with_strategy(s);
        group.bench_function(BenchmarkId::new(name(s), bounds), |b| {
            b.iter(|| {
                check_coequalizer_up(p1, p2, &art.coequalizer_p, &config)
                    .unwrap()
                    .passed()
            })
        });
    }
    group.finish();
}

fn pairings(c: &mut Criterion) {
    // Every pair of margins of size 6 over three labels each.
    let margins: Vec<Multiset<Label>> = (0..=6usize)
        .flat_map(|i| (0..=6 - i).map(move |j| (i, j, 6 - i - j)))
        .map(|(i, j, k)| {
            let mut m = Multiset::new();
            m.insert("a".to_string(), i);
            m.insert("b".to_string(), j);
            m.insert("c".to_string(), k);
            m
        })
        .collect();
    let jobs: Vec<(usize, usize)> = (0..margins.len())
        .flat_map(|i| (0..margins.len()).map(move |j| (i, j)))
        .collect();
    let mut group = c.benchmark_group("enumerate_pairings");
    for s in STRATEGIES {
        group.bench_function(name(s), |b| {
            b.iter(|| {
                par::map(s, &jobs, |&(i, j)| {
                    enumerate_pairings(&margins[i], &margins[j]).len()
                })
                .into_iter()
                .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, generator, product_up, coequalizer_up, pairings);
criterion_main!(benches);
