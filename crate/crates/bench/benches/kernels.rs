use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use taut_bench::{class_pairs, random_matrix};
use taut_core::exact::smith_normal_form;
use taut_core::exterior::{fourier, pontryagin, ExtClass};
use taut_core::lattice::{block_example, Block};
use taut_core::tautological::GroupShadow;

fn fourier_g4(c: &mut Criterion) {
    let pairs = class_pairs(4, 32, 1);
    let theta_exp = ExtClass::theta(4).exp();
    c.bench_function("fourier g=4 exp(theta)", |b| b.iter(|| fourier(black_box(&theta_exp))));
    c.bench_function("fourier g=4 sparse", |b| {
        b.iter(|| {
            for (x, _) in &pairs {
                black_box(fourier(x));
            }
        })
    });
}

fn pontryagin_g4(c: &mut Criterion) {
    let pairs = class_pairs(4, 32, 2);
    c.bench_function("pontryagin g=4 sparse", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(pontryagin(x, y).unwrap());
            }
        })
    });
    let curve = ExtClass::curve(4);
    c.bench_function("pontryagin g=4 C*C", |b| b.iter(|| pontryagin(black_box(&curve), black_box(&curve)).unwrap()));
}

fn closure_g3(c: &mut Criterion) {
    let ex = block_example(&[Block::Shift(2), Block::Rotation(2)]).unwrap();
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    group.bench_function("shift2+minus g=3", |b| {
        b.iter(|| {
            let shadow = GroupShadow::cyclic(&ex.lattice, &ex.sigma).unwrap();
            black_box(shadow.closure().unwrap().dim())
        })
    });
    group.finish();
}

fn smith(c: &mut Criterion) {
    let small = random_matrix(8, 8, 9, 3);
    let large = random_matrix(16, 16, 9, 4);
    c.bench_function("smith 8x8", |b| b.iter(|| smith_normal_form(black_box(&small))));
    c.bench_function("smith 16x16", |b| b.iter(|| smith_normal_form(black_box(&large))));
}

criterion_group!(kernels, fourier_g4, pontryagin_g4, closure_g3, smith);
criterion_main!(kernels);
