use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use grassmin_core::catalog::build_case;
use grassmin_core::dsl::{load, ElabOptions};
use grassmin_core::geometry_report;

fn reports(c: &mut Criterion) {
    let mut g = c.benchmark_group("geometry_report");
    g.sample_size(10);
    for id in ["T1.1-1", "T1.2-7", "T1.4-3"] {
        let b = build_case(id, None).unwrap();
        g.bench_function(id, |bench| bench.iter(|| geometry_report(black_box(&b)).unwrap()));
    }
    g.finish();
}

fn scripts(c: &mut Criterion) {
    let text = "let alpha = concat(veronese(4,2), const(w=48, value=theta))\nmap phi = span(pad_end(veronese(4,3),1), alpha)\n";
    let opts = ElabOptions::default();
    c.bench_function("dsl/load T1.3-3", |b| b.iter(|| load(black_box(text), &opts).unwrap()));
}

criterion_group!(benches, reports, scripts);
criterion_main!(benches);
