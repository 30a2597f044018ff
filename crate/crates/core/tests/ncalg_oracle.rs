//! Cross-checks the normal-ordering engine against a naive rewriting of
//! whole words, one adjacent swap at a time.

use std::collections::BTreeMap;

use proptest::prelude::*;
use qcox_core::cartan::{make_cartan, CartanDatum, Family};
use qcox_core::ncalg::{Monomial, NCAlgebra, NCExpr};
use qcox_core::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    Lat(Vec<i64>),
    Minus(usize),
    Plus(usize),
}

impl Letter {
    fn rank(&self) -> u8 {
        match self {
            Letter::Lat(_) => 0,
            Letter::Minus(_) => 1,
            Letter::Plus(_) => 2,
        }
    }
}

type Words = BTreeMap<Vec<Letter>, RatFunc>;

fn add(words: &mut Words, w: Vec<Letter>, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    let entry = words.entry(w.clone()).or_insert_with(RatFunc::zero);
    *entry = &*entry + &c;
    if entry.is_zero() {
        words.remove(&w);
    }
}

/// Rewrites the first out-of-order adjacent pair of every word until all
/// words are normal.
fn normalize(datum: &CartanDatum, mut words: Words) -> Words {
    loop {
        let mut next = Words::new();
        let mut changed = false;
        for (w, c) in words {
            let pos = (0..w.len().saturating_sub(1)).find(|&k| {
                let (x, y) = (&w[k], &w[k + 1]);
                y.rank() < x.rank() || (x.rank() == 0 && y.rank() == 0)
            });
            let Some(k) = pos else {
                add(&mut next, w, c);
                continue;
            };
            changed = true;
            let (head, tail) = (&w[..k], &w[k + 2..]);
            let splice = |mid: Vec<Letter>| -> Vec<Letter> {
                head.iter()
                    .cloned()
                    .chain(mid)
                    .chain(tail.iter().cloned())
                    .collect()
            };
            match (&w[k], &w[k + 1]) {
                (Letter::Lat(a), Letter::Lat(b)) => {
                    let s = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    add(&mut next, splice(vec![Letter::Lat(s)]), c);
                }
                (Letter::Plus(j), Letter::Lat(mu)) => {
                    let e = -datum.d[*j] * mu[*j];
                    add(
                        &mut next,
                        splice(vec![Letter::Lat(mu.clone()), Letter::Plus(*j)]),
                        &c * &RatFunc::q_pow(e),
                    );
                }
                (Letter::Minus(j), Letter::Lat(mu)) => {
                    let e = datum.d[*j] * mu[*j];
                    add(
                        &mut next,
                        splice(vec![Letter::Lat(mu.clone()), Letter::Minus(*j)]),
                        &c * &RatFunc::q_pow(e),
                    );
                }
                (Letter::Plus(i), Letter::Minus(j)) => {
                    add(
                        &mut next,
                        splice(vec![Letter::Minus(*j), Letter::Plus(*i)]),
                        c.clone(),
                    );
                    if i == j {
                        let di = datum.d[*i];
                        let den = (&RatFunc::q_pow(di) - &RatFunc::q_pow(-di)).inv();
                        // K_i X_j K_i^-1 = q^{b_ij} X_j needs κ_j = a_ji
                        let kappa: Vec<i64> = (0..datum.rank).map(|p| datum.a[p][*i]).collect();
                        let kinv = kappa.iter().map(|x| -x).collect();
                        add(&mut next, splice(vec![Letter::Lat(kappa)]), &c * &den);
                        add(&mut next, splice(vec![Letter::Lat(kinv)]), -(&c * &den));
                    }
                }
                _ => unreachable!("pair is in order"),
            }
        }
        words = next;
        if !changed {
            return words;
        }
    }
}

fn to_expr(datum: &CartanDatum, words: &Words) -> NCExpr {
    let mut out = NCExpr::zero();
    for (w, c) in words {
        let mut m = Monomial {
            lattice: vec![0; datum.rank],
            minus: vec![],
            plus: vec![],
        };
        for letter in w {
            match letter {
                Letter::Lat(mu) => {
                    for (a, b) in m.lattice.iter_mut().zip(mu) {
                        *a += b;
                    }
                }
                Letter::Minus(i) => m.minus.push(*i),
                Letter::Plus(i) => m.plus.push(*i),
            }
        }
        out.add_term(m, c.clone());
    }
    out
}

fn letter(datum: &CartanDatum, code: u8) -> Letter {
    let l = datum.rank;
    let i = (code as usize / 4) % l;
    match code % 4 {
        0 => Letter::Plus(i),
        1 => Letter::Minus(i),
        _ => {
            let mut mu = vec![0; l];
            mu[i] = if code % 4 == 2 { 1 } else { -2 };
            Letter::Lat(mu)
        }
    }
}

fn engine_word(alg: &NCAlgebra, w: &[Letter]) -> NCExpr {
    w.iter().fold(alg.one(), |acc, x| {
        let g = match x {
            Letter::Lat(mu) => alg.lattice(mu),
            Letter::Minus(i) => alg.minus(*i),
            Letter::Plus(i) => alg.plus(*i),
        };
        alg.mul(&acc, &g)
    })
}

fn datum_for(which: u8) -> CartanDatum {
    match which % 4 {
        0 => make_cartan(Family::A, 2).unwrap(),
        1 => make_cartan(Family::B, 2).unwrap(),
        2 => make_cartan(Family::G, 2).unwrap(),
        _ => make_cartan(Family::A, 3).unwrap(),
    }
}

#[test]
fn known_small_word() {
    // X1+ X1- L1 in A2
    let d = make_cartan(Family::A, 2).unwrap();
    let alg = NCAlgebra::new(&d);
    let w = vec![Letter::Plus(0), Letter::Minus(0), Letter::Lat(vec![1, 0])];
    let mut words = Words::new();
    words.insert(w.clone(), RatFunc::one());
    let oracle = to_expr(&d, &normalize(&d, words));
    assert_eq!(engine_word(&alg, &w), oracle);
    assert_eq!(oracle.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn engine_matches_naive_rewriting(
        which in 0u8..4,
        codes in prop::collection::vec(0u8..32, 0..=7),
    ) {
        let d = datum_for(which);
        let alg = NCAlgebra::new(&d);
        let w: Vec<Letter> = codes.iter().map(|c| letter(&d, *c)).collect();
        let mut words = Words::new();
        words.insert(w.clone(), RatFunc::one());
        let oracle = to_expr(&d, &normalize(&d, words));
        prop_assert_eq!(engine_word(&alg, &w), oracle);
    }
}
