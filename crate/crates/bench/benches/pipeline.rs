use archseam_bench::{model, source, SIZES};
use archseam_core::{adl, coverage, trace, validate, Direction, ElementKind, RuleConfig, TraceOptions};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn load(c: &mut Criterion) {
    let mut group = c.benchmark_group("load");
    for size in SIZES {
        let text = source(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &text, |b, text| {
            b.iter(|| adl::load(black_box(text.as_bytes()), "bench.adl"))
        });
    }
    group.finish();
}

fn analyse(c: &mut Criterion) {
    let config = RuleConfig::default();
    let mut group = c.benchmark_group("validate");
    for size in SIZES {
        let m = model(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| validate(black_box(m), &config))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("coverage");
    for size in SIZES {
        let m = model(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| coverage(black_box(m)))
        });
    }
    group.finish();
}

fn tracing(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_all_processes");
    for size in SIZES {
        let m = model(size);
        let roots: Vec<String> = m
            .elements_of_kind(ElementKind::BusinessProcess)
            .into_iter()
            .map(String::from)
            .collect();
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| {
                for r in &roots {
                    black_box(trace(m, r, Direction::Forward, &TraceOptions::extended()).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, load, analyse, tracing);
criterion_main!(benches);
