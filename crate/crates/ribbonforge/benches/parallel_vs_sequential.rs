use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ribbonforge::diagram_core::regular_polygon;
use ribbonforge::exec::Execution;
use ribbonforge::linking::enumerate_foldings;
use ribbonforge::optimize::{minimize_tan_sum_with, triangle_width_search, AngleDomain};
use ribbonforge::tolerances::EPS_GEOM;

fn modes() -> Vec<(&'static str, Execution)> {
    let mut m = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        m.push(("parallel", Execution::Parallel));
    }
    m
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_foldings");
    for n in [8usize, 12] {
        let d = regular_polygon(n, 1.0);
        for (name, exec) in modes() {
            g.bench_with_input(BenchmarkId::new(name, n), &d, |b, d| {
                b.iter(|| enumerate_foldings(black_box(d), EPS_GEOM, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn triangles(c: &mut Criterion) {
    let mut g = c.benchmark_group("triangle_width_search");
    g.sample_size(20);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::new(name, 100_000), |b| {
            b.iter(|| triangle_width_search(black_box(100_000), 1, exec))
        });
    }
    g.finish();
}

fn multistart(c: &mut Criterion) {
    let mut g = c.benchmark_group("minimize_tan_sum");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::new(name, 12), |b| {
            b.iter(|| minimize_tan_sum_with(black_box(12), AngleDomain::Obtuse, 64, 1, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, triangles, multistart);
criterion_main!(benches);
