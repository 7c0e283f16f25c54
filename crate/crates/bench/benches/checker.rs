use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mmppf_bench::{ring, walk};
use mmppf_core::rgtc::{block_vocabulary, collapse_grammar};
use mmppf_core::syntax::parse_pl_star;
use mmppf_core::{
    check, oracle_check, translate_tr1, translate_tr2, validate_all, AbstractionProfile,
};

fn checker(c: &mut Criterion) {
    let mut group = c.benchmark_group("check");
    for n in [4, 16, 64] {
        let m = ring(n, n);
        let next = walk(n, n, "->>");
        let eventually = walk(n, n, "~>");
        group.bench_with_input(BenchmarkId::new("next", n), &n, |b, _| {
            b.iter(|| check(&m, n, &next).unwrap().holds)
        });
        group.bench_with_input(BenchmarkId::new("eventually", n), &n, |b, _| {
            b.iter(|| check(&m, n, &eventually).unwrap().holds)
        });
    }
    group.finish();

    let m = ring(4, 4);
    let f = walk(4, 4, "~>");
    c.bench_function("oracle/ring4", |b| {
        b.iter(|| oracle_check(&m, 4, &f).unwrap())
    });
}

fn validation(c: &mut Criterion) {
    let m = ring(32, 32);
    c.bench_function("validate/ring32", |b| b.iter(|| validate_all(&m).len()));
}

fn translation(c: &mut Criterion) {
    let f = walk(8, 32, "->>");
    c.bench_function("tr1/walk32", |b| {
        b.iter(|| translate_tr1(&f, &AbstractionProfile::Default, None).unwrap())
    });
    let mut group = c.benchmark_group("tr2");
    for k in [4, 16, 64] {
        let text = vec!["[e|<||meta o1: b1]"; k].join(" ->> ");
        let star = parse_pl_star(&text).unwrap();
        let g = collapse_grammar(&block_vocabulary(&star));
        group.bench_with_input(BenchmarkId::new("collapse", k), &k, |b, _| {
            b.iter(|| translate_tr2(&star, Some(&g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, checker, validation, translation);
criterion_main!(benches);
