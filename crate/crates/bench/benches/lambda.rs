use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use grcone::{
    build_certificate, hn_of_split, lambda_char0, max_subset_sum, verify_theorem_split, BigInt,
    CoverModel, SplitBundle, StrongHnData,
};
use grcone_bench::{split_corpus, staircase_hn};

fn lambda_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda");
    for rank in [4usize, 8, 12] {
        let corpus = split_corpus(7, 64, rank);
        let r = rank / 2;
        group.bench_with_input(BenchmarkId::new("formula", rank), &corpus, |b, corpus| {
            b.iter(|| {
                for e in corpus {
                    black_box(lambda_char0(&hn_of_split(e), r).unwrap());
                }
            })
        });
        group.bench_with_input(
            BenchmarkId::new("subset_oracle", rank),
            &corpus,
            |b, corpus| {
                b.iter(|| {
                    for e in corpus {
                        black_box(max_subset_sum(e.exponents(), r).unwrap());
                    }
                })
            },
        );
    }
    group.finish();
}

fn theorem_witness(c: &mut Criterion) {
    let corpus = split_corpus(11, 64, 8);
    c.bench_function("verify_theorem_split/rank8", |b| {
        b.iter(|| {
            for e in &corpus {
                for r in 1..e.rank() {
                    black_box(verify_theorem_split(e, r).unwrap());
                }
            }
        })
    });
}

fn certificate(c: &mut Criterion) {
    let hn = staircase_hn(6);
    let d = StrongHnData::new(3, 4, hn.clone()).unwrap();
    // cover of degree 2 with deg ℒ = 1: exponent = 2·μ = degree of the rank-2 block
    let exps: Vec<BigInt> = hn
        .blocks()
        .iter()
        .flat_map(|b| [b.degree().clone(), b.degree().clone()])
        .collect();
    let cm = CoverModel::new(
        BigInt::from(2),
        BigInt::from(1),
        SplitBundle::new(exps).unwrap(),
    )
    .unwrap();
    c.bench_function("build_certificate/rank12", |b| {
        b.iter(|| {
            for r in 1..hn.total_rank() {
                black_box(build_certificate(&d, &cm, r).unwrap());
            }
        })
    });
}

criterion_group!(benches, lambda_vs_oracle, theorem_witness, certificate);
criterion_main!(benches);
