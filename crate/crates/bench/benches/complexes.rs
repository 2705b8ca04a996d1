use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pfh_bench::{hull_window, wide_window};
use pfh_core::cylinder::{differential, differential_by_predicate};
use pfh_core::f2homology::betti;
use pfh_core::surface::build_delta0;
use pfh_core::torus::delta0;
use pfh_core::{SurfaceConfig, SurfaceKind, TorusSector};

fn cylinder(c: &mut Criterion) {
    let prob = hull_window();
    c.bench_function("cylinder differential (4,11)", |b| b.iter(|| differential(black_box(&prob)).unwrap()));
    let cx = differential(&prob).unwrap();
    c.bench_function("cylinder homology (4,11)", |b| b.iter(|| betti(black_box(&cx.complex)).unwrap()));

    let mut group = c.benchmark_group("constructive vs predicate");
    for q in [3, 4, 5] {
        let prob = wide_window(2, q);
        group.bench_with_input(BenchmarkId::new("corners", q), &prob, |b, p| b.iter(|| differential(p).unwrap()));
        group.bench_with_input(BenchmarkId::new("pairs", q), &prob, |b, p| b.iter(|| differential_by_predicate(p).unwrap()));
    }
    group.finish();
}

fn torus(c: &mut Criterion) {
    let mut group = c.benchmark_group("torus delta0");
    for (n, d) in [(1, 4), (2, 4), (2, 5)] {
        let s = TorusSector::new(n, d, 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("n{n}d{d}")), &s, |b, s| b.iter(|| delta0(s).unwrap()));
    }
    group.finish();
}

fn surface(c: &mut Criterion) {
    let cfg = SurfaceConfig::new(SurfaceKind::Nonseparating { g: 3 }, 2).unwrap();
    c.bench_function("surface nonseparating g3 d2", |b| b.iter(|| build_delta0(black_box(&cfg), None).unwrap()));
    let cfg = SurfaceConfig::new(SurfaceKind::Separating { g0: 1, g1: 1 }, 3).unwrap();
    c.bench_function("surface separating g1,1 d3", |b| b.iter(|| build_delta0(black_box(&cfg), None).unwrap()));
}

criterion_group!(benches, cylinder, torus, surface);
criterion_main!(benches);
