use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyrank::equivalence::{canonical_form, decide_equivalence, frame_search, SearchLimits, Strategy};
use polyrank::geometry::{enumerate_facets, lattice_invariants, LatticePolytope};
use polyrank_bench::{build, WORKLOAD};

fn fresh(p: &LatticePolytope) -> LatticePolytope {
    // the hull is cached per value; rebuild to time it
    LatticePolytope::new(p.vertices().to_vec()).unwrap()
}

fn hull(c: &mut Criterion) {
    let mut g = c.benchmark_group("facets");
    for e in WORKLOAD {
        let p = build(e);
        g.bench_with_input(BenchmarkId::from_parameter(e), &p, |b, p| {
            b.iter(|| enumerate_facets(&fresh(p)).inequalities.len())
        });
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("fingerprint");
    for e in WORKLOAD {
        let p = build(e);
        g.bench_with_input(BenchmarkId::from_parameter(e), &p, |b, p| b.iter(|| lattice_invariants(p)));
    }
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_form");
    for e in WORKLOAD {
        let p = build(e);
        g.bench_with_input(BenchmarkId::from_parameter(e), &p, |b, p| b.iter(|| canonical_form(p).unwrap()));
    }
    g.finish();
}

fn equivalence(c: &mut Criterion) {
    let pairs = [
        ("base:D:2,2,2", "edge:KM:2,2,2"),
        ("base:C:1,1;p=1,q=1", "order:W:1,1,1,1"),
        ("base:B:1,2;p=1", "stab:G:1,2;p=1"),
    ];
    let mut g = c.benchmark_group("equivalence");
    for (a, b) in pairs {
        let (p, q) = (build(a), build(b));
        g.bench_function(format!("canonical {a}"), |bch| {
            bch.iter(|| decide_equivalence(&p, &q, Strategy::Canonical, &SearchLimits::default()).unwrap())
        });
        g.bench_function(format!("frames {a}"), |bch| bch.iter(|| frame_search(&p, &q).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, hull, invariants, canonical, equivalence);
criterion_main!(benches);
