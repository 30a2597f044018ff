//! Whole-sweep invariants beyond the acceptance criteria.

use qcox_core::cartan::{finite_types, make_cartan, Family};
use qcox_core::coxeter::{check_cayley_lemma, check_coxeter_element, solve_n, Permutation};
use qcox_core::qseries::{
    check_affine_pack, check_dichotomy, check_kq_direct, check_kq_log, serre_series_identity,
    solve_kq, taylor_solve_f, FTable,
};

#[test]
fn taylor_and_dichotomy_rank_four() {
    for (f, r) in finite_types(4) {
        let d = make_cartan(f, r).unwrap();
        for p in Permutation::all(r) {
            let n = solve_n(&d, &p, None).unwrap();
            let table = FTable::new(&d, &n);
            assert!(check_dichotomy(&table).is_pass(), "{} {p}", d.label());
            for i in 0..r {
                for j in 0..r {
                    if d.a[i][j] == 0 {
                        continue;
                    }
                    let s = taylor_solve_f(&d, &n, i, j, 8).unwrap();
                    assert_eq!(s, table.get(i, j).expand(8), "{} {p} ({i},{j})", d.label());
                }
            }
        }
    }
}

#[test]
fn constant_side_follows_the_permutation() {
    // F_ij is the constant one exactly when i comes after j in π
    let d = make_cartan(Family::B, 3).unwrap();
    for p in Permutation::all(3) {
        let n = solve_n(&d, &p, None).unwrap();
        let table = FTable::new(&d, &n);
        let pos = p.position();
        for i in 0..3 {
            for j in 0..3 {
                if i == j || d.a[i][j] == 0 {
                    continue;
                }
                assert_eq!(
                    table.get(i, j).is_constant(),
                    pos[i] > pos[j],
                    "{p} ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn serre_series_rank_four() {
    for (f, r) in [
        (Family::A, 4),
        (Family::B, 4),
        (Family::C, 4),
        (Family::D, 4),
        (Family::F, 4),
    ] {
        let d = make_cartan(f, r).unwrap();
        for p in Permutation::all(r) {
            let n = solve_n(&d, &p, None).unwrap();
            let table = FTable::new(&d, &n);
            for i in 0..r {
                for j in 0..r {
                    if i != j && d.a[i][j] != 0 {
                        let v = serre_series_identity(&table, d.d[i], i, j).unwrap();
                        assert!(v.is_pass(), "{} {p}: {v}", d.label());
                    }
                }
            }
        }
    }
}

#[test]
fn e6_matrix_level() {
    let d = make_cartan(Family::E, 6).unwrap();
    for p in Permutation::all(6) {
        assert!(check_cayley_lemma(&d, &p).is_pass(), "{p}");
        assert!(check_coxeter_element(&d, &p).is_pass(), "{p}");
    }
}

#[test]
fn kq_forms_agree_on_perturbations() {
    let d = make_cartan(Family::G, 2).unwrap();
    for p in Permutation::all(2) {
        let n = solve_n(&d, &p, None).unwrap();
        for k in 0..=2 {
            let twist = solve_kq(&d, &p, &n, k, 8).unwrap();
            assert!(check_kq_direct(&twist).is_pass());
            assert!(check_kq_log(&twist).is_pass());
            for (i, j, r) in [(0, 1, 1), (1, 1, 4), (1, 0, 8)] {
                let mut bad = twist.clone();
                let x = &bad.n_pos[r - 1][i][j] + &qcox_core::RatFunc::q_pow(3);
                bad.n_pos[r - 1][i][j] = x;
                assert!(!check_kq_direct(&bad).is_pass());
                assert!(!check_kq_log(&bad).is_pass());
            }
        }
    }
}

#[test]
fn affine_pack_sweep() {
    for (f, r) in [(Family::A, 3), (Family::B, 2), (Family::G, 2)] {
        let d = make_cartan(f, r).unwrap();
        for p in Permutation::all(r) {
            let n = solve_n(&d, &p, None).unwrap();
            for k in 0..=2 {
                let v = check_affine_pack(&d, &n, k, 10);
                assert!(v.is_pass(), "{} {p} k={k}: {v}", d.label());
            }
        }
    }
}
