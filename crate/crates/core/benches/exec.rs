use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cousinet::adams::{adams_e2, catalogue, RANK1};
use cousinet::homalg::{lcoh_floor, polynomial_ring, stable_koszul_lcoh};
use cousinet::{exec, Exec};

fn strategies() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn local_cohomology(c: &mut Criterion) {
    let degrees: Vec<i64> = (4..=16).collect();
    let h = 8;
    let p = polynomial_ring(2, lcoh_floor(&degrees, 2, h)).unwrap();
    let mut g = c.benchmark_group("lcoh Q[x,y]");
    g.sample_size(10);
    for (name, ex) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| stable_koszul_lcoh(black_box(&p), &[0, 1], &degrees, h, ex).unwrap())
        });
    }
    g.finish();
}

/// Every ordered pair of rank-one catalogue entries, one page per pair.
fn adams_sweep(c: &mut Criterion) {
    let entries: Vec<_> = RANK1.iter().map(|n| catalogue(1, n).unwrap()).collect();
    let pairs: Vec<(usize, usize)> = (0..entries.len()).flat_map(|i| (0..entries.len()).map(move |j| (i, j))).collect();
    let mut g = c.benchmark_group("e2 rank-one sweep");
    g.sample_size(10);
    for (name, ex) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec::map(ex, &pairs, |&(i, j)| {
                    let (x, y) = (&entries[i], &entries[j]);
                    adams_e2((&x.name, &x.object), (&y.name, &y.object), (-10, 10), None, Exec::Sequential).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, local_cohomology, adams_sweep);
criterion_main!(benches);
