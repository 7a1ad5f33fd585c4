use criterion::{criterion_group, criterion_main, Criterion};
use kmlat_core::lie;
use kmlat_core::root_datum::{positive_roots, Gcm};
use kmlat_core::tree::{act, ball, parse_word, DEFAULT_BUDGET};
use kmlat_core::Fq;

fn bench_roots(c: &mut Criterion) {
    let gcm = Gcm::new(-3, -3).unwrap();
    c.bench_function("positive_roots depth 64", |b| {
        b.iter(|| positive_roots(&gcm, 1, 64))
    });
}

fn bench_epsilon(c: &mut Criterion) {
    c.bench_function("epsilon pair (-2,-3)", |b| {
        let gcm = Gcm::new(-2, -3).unwrap();
        b.iter(|| lie::epsilon_pair(&gcm).unwrap())
    });
}

fn bench_act(c: &mut Criterion) {
    let gcm = Gcm::new(-2, -2).unwrap();
    let f = Fq::parse("5").unwrap();
    let eps = lie::epsilon_pair(&gcm).unwrap();
    let w = parse_word(&f, "x(0,1;1) n(1) x(1,0;2) n(2) x(-1,0;3)").unwrap();
    let edges = ball(&f, 3);
    c.bench_function("act on ball(3), q=5", |b| {
        b.iter(|| {
            for e in &edges {
                act(&gcm, &f, eps, &w, e, DEFAULT_BUDGET).unwrap();
            }
        })
    });
}

criterion_group!(benches, bench_roots, bench_epsilon, bench_act);
criterion_main!(benches);
