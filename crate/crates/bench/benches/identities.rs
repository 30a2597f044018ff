use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qcox_bench::{f_table, mixed_words, realization};
use qcox_core::cartan::{make_cartan, Family};
use qcox_core::coxeter::{check_cayley_lemma, Permutation};
use qcox_core::ncalg::check_theorem1;
use qcox_core::qseries::{jing_identity, serre_series_identity, solve_kq};
use qcox_core::NCAlgebra;

fn matrix_level(c: &mut Criterion) {
    let f4 = make_cartan(Family::F, 4).unwrap();
    let perms = Permutation::all(4);
    c.bench_function("cayley_lemma_F4_all_perms", |b| {
        b.iter(|| {
            perms
                .iter()
                .all(|p| check_cayley_lemma(black_box(&f4), p).is_pass())
        })
    });
}

fn rewriting(c: &mut Criterion) {
    let g2 = realization(Family::G, 2);
    let alg = NCAlgebra::new(&g2.datum);
    let (x, y) = mixed_words(&alg);
    c.bench_function("nc_mul_G2_reorder", |b| {
        b.iter(|| alg.mul(black_box(&y), black_box(&x)))
    });
    let b2 = realization(Family::B, 2);
    c.bench_function("theorem1_B2", |b| b.iter(|| check_theorem1(black_box(&b2))));
}

fn series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(10);
    let g2 = realization(Family::G, 2);
    let table = f_table(&g2.datum);
    group.bench_function("serre_series_G2_1_2", |b| {
        b.iter(|| serre_series_identity(&table, g2.datum.d[0], 0, 1).unwrap())
    });
    group.bench_function("jing_m_minus_2", |b| {
        b.iter(|| jing_identity(black_box(-2)).unwrap())
    });
    let a3 = realization(Family::A, 3);
    group.bench_function("kq_A3_level1_rmax12", |b| {
        b.iter(|| solve_kq(&a3.datum, &a3.perm, &a3.n, 1, 12).unwrap())
    });
    group.finish();
}

criterion_group!(benches, matrix_level, rewriting, series);
criterion_main!(benches);
