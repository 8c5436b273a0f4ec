use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lnd_cli::corpus::bundled;
use lnd_cli::{run_fixture, FixtureFile, RunOptions};
use lnd_core::groebner::groebner_basis;
use lnd_core::invariant::kernel_basis_bounded;
use lnd_core::{parse_expression, Derivation, Limits, OrderKind, Ring, TermOrder, VarContext};

fn groebner(c: &mut Criterion) {
    let ctx = VarContext::new(&["X", "Y", "Z", "U", "V", "T"]).unwrap();
    let rels: Vec<_> =
        ["X^2 + Y^3 + Z^7", "X*U - Y*V - 1"].iter().map(|s| parse_expression(s, &ctx).unwrap()).collect();
    let mut g = c.benchmark_group("groebner");
    g.bench_function("two relations, grevlex", |b| {
        b.iter(|| groebner_basis(black_box(&rels), &TermOrder::grevlex(6)).unwrap())
    });
    g.bench_function("two relations, lex", |b| {
        b.iter(|| groebner_basis(black_box(&rels), &TermOrder::lex(6)).unwrap())
    });
    g.finish();
}

fn bounded_kernel(c: &mut Criterion) {
    let ring = Ring::parse(&["X", "Y", "Z", "T"], &["X*Y - Z*T - 1"], OrderKind::Grevlex).unwrap();
    let d = Derivation::from_strs(&ring, "D1", &[("X", "0"), ("Y", "Z"), ("Z", "0"), ("T", "X")]).unwrap();
    let mut g = c.benchmark_group("kernel_basis_bounded");
    for degree in [2, 3, 4] {
        g.bench_function(format!("threefold, d={degree}"), |b| {
            b.iter(|| kernel_basis_bounded(&d, black_box(degree), Limits::default()).unwrap())
        });
    }
    g.finish();
}

fn fixtures(c: &mut Criterion) {
    let mut g = c.benchmark_group("fixture");
    g.sample_size(20);
    for id in ["ex5_1", "ex5_7", "ex5_8"] {
        let file = FixtureFile::parse(bundled(id).unwrap()).unwrap();
        g.bench_function(id, |b| b.iter(|| run_fixture(black_box(&file), &RunOptions::default()).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, groebner, bounded_kernel, fixtures);
criterion_main!(benches);
