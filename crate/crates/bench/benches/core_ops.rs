//! Criterion benchmarks for the hot paths: straightening products,
//! coproducts, twist normalization, and support arithmetic.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use twistlab_core::twist::{gauge_twist, normalize_invariant_twist, reconstruct};
use twistlab_core::uea::{Ctx, Elem};
use twistlab_core::{geom, lie, sampling};

fn wedge(ctx: &std::sync::Arc<Ctx>, i: usize, j: usize) -> Elem {
    let a = Elem::generator(ctx, i);
    let b = Elem::generator(ctx, j);
    a.tensor(&b).sub(&b.tensor(&a))
}

fn bench_product(c: &mut Criterion) {
    let ctx = Ctx::new(lie::heisenberg(2), 4);
    let mut rng = sampling::rng_from_seed(1);
    let a = sampling::random_elem(&ctx, &mut rng, 1, 4, 6);
    let b = sampling::random_elem(&ctx, &mut rng, 1, 4, 6);
    c.bench_function("straightened_product", |bch| {
        bch.iter(|| black_box(&a).mul(black_box(&b)))
    });
}

fn bench_coproduct(c: &mut Criterion) {
    let ctx = Ctx::new(lie::heisenberg(2), 4);
    let mut rng = sampling::rng_from_seed(2);
    let a = sampling::random_elem(&ctx, &mut rng, 1, 5, 6);
    c.bench_function("coproduct", |bch| bch.iter(|| black_box(&a).coproduct_at(0)));
}

fn bench_exponential(c: &mut Criterion) {
    let ctx = Ctx::new(lie::heisenberg(2), 4);
    let x = wedge(&ctx, 0, 4).add(&wedge(&ctx, 2, 4)).shift_h(1);
    c.bench_function("tensor_exponential", |bch| {
        bch.iter(|| black_box(&x).exp().unwrap())
    });
}

fn bench_normalize(c: &mut Criterion) {
    let ctx = Ctx::new(lie::heisenberg(1), 4);
    let mut rng = sampling::rng_from_seed(3);
    let xs: Vec<Elem> = (1..=4)
        .map(|_| sampling::random_invariant_skew(&ctx, &mut rng))
        .collect();
    let f = reconstruct(&ctx, &xs).unwrap();
    let a = sampling::random_gauge(&ctx, &mut rng).unwrap();
    let g = gauge_twist(&a, &f).unwrap();
    c.bench_function("normalize_gauged_twist", |bch| {
        bch.iter(|| normalize_invariant_twist(black_box(&g)).unwrap())
    });
}

fn bench_geometric_add(c: &mut Criterion) {
    let ctx = Ctx::new(lie::heisenberg(2), 1);
    let x = wedge(&ctx, 0, 4);
    let y = wedge(&ctx, 1, 4).add(&wedge(&ctx, 2, 4));
    let sx = geom::classify(&x).unwrap();
    let sy = geom::classify(&y).unwrap();
    c.bench_function("geometric_add", |bch| {
        bch.iter(|| geom::geometric_add(black_box(&sx), black_box(&sy)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_product,
    bench_coproduct,
    bench_exponential,
    bench_normalize,
    bench_geometric_add
);
criterion_main!(benches);
