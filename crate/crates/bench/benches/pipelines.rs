use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polyszego_core::format::{parse_real, parse_zzbar};
use polyszego_core::numerics::{numerical_szego_poly, BoundaryGrid};
use polyszego_core::{harmonic_extension, szego_project, Ellipse, Ellipsoid};

fn szego(c: &mut Criterion) {
    let e = Ellipse::centered(2, 1);
    let mut group = c.benchmark_group("szego_project");
    for (name, src) in [
        ("zbar", "zbar"),
        ("deg4", "z^2*zbar^2 - 3*zbar^4 + x*y"),
        ("deg6", "(1+i)*z^3*zbar^3 + zbar^6 - z*zbar^5/2"),
    ] {
        let f = parse_zzbar(src).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &f, |b, f| {
            b.iter(|| szego_project(black_box(&e), black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn dirichlet(c: &mut Criterion) {
    let mut group = c.benchmark_group("harmonic_extension");
    let planar = Ellipse::from_ints(3, 2, 1, -1).to_ellipsoid();
    let p = parse_real("x^8 - 3*x^3*y^5 + y^2", 2).unwrap();
    group.bench_function("planar_deg8", |b| {
        b.iter(|| harmonic_extension(black_box(&planar), black_box(&p)).unwrap())
    });
    let ball = Ellipsoid::unit_ball(3);
    let p3 = parse_real("x1^6 - x2^3*x3^3 + x1*x2*x3", 3).unwrap();
    group.bench_function("ball3_deg6", |b| {
        b.iter(|| harmonic_extension(black_box(&ball), black_box(&p3)).unwrap())
    });
    group.finish();
}

fn numerics(c: &mut Criterion) {
    let e = Ellipse::centered(2, 1);
    let f = parse_zzbar("z^2*zbar^3 - zbar").unwrap();
    let mut group = c.benchmark_group("numerical_szego");
    for m in [256usize, 1024] {
        let grid = BoundaryGrid::new(&e, m, true).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(m), &grid, |b, grid| {
            b.iter(|| numerical_szego_poly(black_box(grid), black_box(&f), 12).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, szego, dirichlet, numerics);
criterion_main!(benches);
