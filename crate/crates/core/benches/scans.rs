use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torusforge::census::{count_nilpotent_bruteforce, enumerate_maximal_tori, normalizer_group_bruteforce, DEFAULT_GL_BOUND, DEFAULT_SCAN_BOUND};
use torusforge::torus::canonical_torus;
use torusforge::{field_of_order, Ambient, Exec, PartitionType};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn normalizer(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalizer_bruteforce");
    g.sample_size(10);
    let f = field_of_order(3).unwrap();
    let t = canonical_torus(&PartitionType::new(vec![2, 1]).unwrap(), &f, Ambient::Gl).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "gl(3,3) type (2,1)"), |b| {
            b.iter(|| normalizer_group_bruteforce(black_box(&t), DEFAULT_GL_BOUND, exec).unwrap())
        });
    }
    g.finish();
}

fn orbits(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_maximal_tori");
    g.sample_size(10);
    for (n, q) in [(2, 5), (3, 3)] {
        let f = field_of_order(q).unwrap();
        for (name, exec) in MODES {
            g.bench_function(BenchmarkId::new(name, format!("gl({n},{q})")), |b| {
                b.iter(|| enumerate_maximal_tori(n, black_box(&f), Ambient::Gl, DEFAULT_GL_BOUND, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn nilpotent(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_nilpotent");
    g.sample_size(10);
    let f = field_of_order(3).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "Mat(3,3)"), |b| {
            b.iter(|| count_nilpotent_bruteforce(3, black_box(&f), DEFAULT_SCAN_BOUND, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, normalizer, orbits, nilpotent);
criterion_main!(benches);
