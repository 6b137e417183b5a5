use braidhom_bench::{braid, WORKLOADS};
use braidhom_core::hecke::{t_minus_default, t_plus_default};
use braidhom_core::hochschild::{koszul_hh, trigraded_dims, trigraded_dims_exact};
use braidhom_core::{homfly_oracle, Engine};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn complexes(c: &mut Criterion) {
    let mut g = c.benchmark_group("braid_complex");
    for &(tag, b, _) in WORKLOADS {
        let b = braid(b);
        let e = Engine::from_tag(tag).unwrap();
        g.bench_with_input(BenchmarkId::new("minimized", format!("{tag} {b}")), &b, |bench, b| {
            bench.iter(|| e.complex(black_box(b)).unwrap())
        });
        let raw = Engine::from_tag(tag).unwrap().with_minimize(false);
        g.bench_with_input(BenchmarkId::new("raw", format!("{tag} {b}")), &b, |bench, b| {
            bench.iter(|| raw.complex(black_box(b)).unwrap())
        });
    }
    g.finish();
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild");
    g.sample_size(10);
    for &(tag, b, cutoff) in WORKLOADS {
        let b = braid(b);
        let e = Engine::from_tag(tag).unwrap();
        let k = koszul_hh(e.soergel(), &e.complex(&b).unwrap()).unwrap().reduce();
        let id = format!("{tag} {b} d<={cutoff}");
        g.bench_function(BenchmarkId::new("modular", &id), |bench| {
            bench.iter(|| trigraded_dims(black_box(&k), cutoff).unwrap())
        });
        if tag == "A1" {
            g.bench_function(BenchmarkId::new("exact", &id), |bench| {
                bench.iter(|| trigraded_dims_exact(black_box(&k), cutoff).unwrap())
            });
        }
    }
    g.finish();
}

fn decategorified(c: &mut Criterion) {
    let e = Engine::type_a(4).unwrap();
    let b = braid("1 -2 3 1 -2 3 2");
    let h = e.hecke().braid_image(&b).unwrap();
    c.bench_function("ocneanu trace A3", |bench| {
        bench.iter(|| e.hecke().ocneanu_trace(black_box(&h), &t_plus_default(), &t_minus_default()).unwrap())
    });
    c.bench_function("skein oracle A3", |bench| bench.iter(|| homfly_oracle(black_box(&b), 4, 1_000_000).unwrap()));
}

criterion_group!(benches, complexes, tables, decategorified);
criterion_main!(benches);
