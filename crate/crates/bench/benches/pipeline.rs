use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dcp_bench::braid_set;
use dcp_core::dcphom::{integral_synthesis, mod2_betti};
use dcp_core::families::braid;
use dcp_core::linalg::{smith_normal_form, IntMatrix};
use dcp_core::poset::{interval_complex, PosetView};
use dcp_core::{ForestIndex, DEFAULT_LATTICE_GUARD};

fn closure(c: &mut Criterion) {
    let mut g = c.benchmark_group("closure");
    for n in [4, 5, 6] {
        let a = braid(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| a.building_set(DEFAULT_LATTICE_GUARD).unwrap())
        });
    }
    g.finish();
}

fn snf(c: &mut Criterion) {
    // top boundary of the interval complex at the root of braid 6
    let bs = braid_set(6);
    let view = PosetView::new(&bs, 1).unwrap();
    let cx = interval_complex(&view, bs.lattice().root())
        .unwrap()
        .complex;
    let top = cx.top_degree().unwrap();
    let d: IntMatrix = cx.boundary(top);
    c.bench_function("snf/braid6-root-top", |b| {
        b.iter(|| smith_normal_form(black_box(&d)))
    });
}

fn forests(c: &mut Criterion) {
    let mut g = c.benchmark_group("forest_index");
    for n in [5, 6] {
        let bs = braid_set(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &bs, |b, bs| {
            b.iter(|| ForestIndex::new(bs, 1).unwrap())
        });
    }
    g.finish();
}

fn synthesis(c: &mut Criterion) {
    let mut g = c.benchmark_group("integral_synthesis");
    g.sample_size(10);
    for n in [5, 6] {
        let bs = braid_set(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &bs, |b, bs| {
            b.iter(|| integral_synthesis(bs).unwrap())
        });
    }
    g.finish();
    let bs = braid_set(6);
    c.bench_function("mod2_betti/6", |b| b.iter(|| mod2_betti(&bs).unwrap()));
}

criterion_group!(benches, closure, snf, forests, synthesis);
criterion_main!(benches);
