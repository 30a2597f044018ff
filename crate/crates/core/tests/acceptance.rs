//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time bound.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qcox_core::cartan::{finite_types, make_cartan, CartanDatum, Family, IntMatrix};
use qcox_core::coxeter::{
    check_cayley_lemma, check_character_pair, check_coxeter_element, check_nogo_pair, solve_n,
    CoxeterRealizationData, Permutation,
};
use qcox_core::ncalg::{
    check_theorem1, check_theorem1_pair, integer_pairing, psi_images, NCAlgebra,
};
use qcox_core::qnum::{expected_solution_set, rat, ratio, rational_solution_set};
use qcox_core::qseries::{
    check_fg_constraints, check_kq, jing_identity, quadratic_character_check,
    serre_character_check, serre_series_identity, solve_kq, taylor_solve_f, FTable, MLPoly, Var,
};
use qcox_core::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TAYLOR_ORDER: usize = 20;
const KQ_RMAX: usize = 12;
const KQ_LEVELS: [i64; 3] = [0, 1, 2];
const GENCHAR_ORDER: usize = 16;
const GENCHAR_FAMILIES: usize = 20;
const GENCHAR_SEED: u64 = 0x5eed_c0de;

struct Criterion {
    id: u32,
    name: &'static str,
    bound: Option<Duration>,
    run: fn() -> Verdict,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn sweep_rank4() -> Vec<(CartanDatum, Permutation)> {
    let mut out = Vec::new();
    for (f, r) in finite_types(4) {
        let d = make_cartan(f, r).unwrap();
        for p in Permutation::all(r) {
            out.push((d.clone(), p));
        }
    }
    out
}

fn sweep_rewriting() -> Vec<(CartanDatum, Permutation)> {
    let types = [
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 3),
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 3),
        (Family::G, 2),
    ];
    let mut out = Vec::new();
    for (f, r) in types {
        let d = make_cartan(f, r).unwrap();
        for p in Permutation::all(r) {
            out.push((d.clone(), p));
        }
    }
    out
}

fn tag(d: &CartanDatum, p: &Permutation) -> String {
    format!("{} π={p}", d.label())
}

fn pairs(l: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..l).flat_map(move |i| (0..l).map(move |j| (i, j)))
}

fn lemma2() -> Verdict {
    Verdict::all(
        sweep_rank4()
            .iter()
            .map(|(d, p)| match check_cayley_lemma(d, p) {
                Verdict::Pass => Verdict::Pass,
                Verdict::Fail(w) => Verdict::fail(format!("{}: {w}", tag(d, p))),
            }),
    )
}

fn coxeter_order() -> Verdict {
    Verdict::all(
        sweep_rank4()
            .iter()
            .map(|(d, p)| match check_coxeter_element(d, p) {
                Verdict::Pass => Verdict::Pass,
                Verdict::Fail(w) => Verdict::fail(format!("{}: {w}", tag(d, p))),
            }),
    )
}

fn character() -> Verdict {
    let mut count = 0;
    for (d, p) in sweep_rank4() {
        let n = match solve_n(&d, &p, None) {
            Ok(n) => n,
            Err(e) => return Verdict::fail(format!("{}: {e}", tag(&d, &p))),
        };
        for (i, j) in pairs(d.rank) {
            if i == j || d.a[i][j] == 0 {
                continue;
            }
            count += 1;
            if let Verdict::Fail(w) = check_character_pair(&d, &n, i, j) {
                return Verdict::fail(format!("{}: {w}", tag(&d, &p)));
            }
        }
    }
    Verdict::check(count > 0, || "no cases".into())
}

fn nogo() -> Verdict {
    let mut count = 0;
    for (f, r) in finite_types(4) {
        let d = make_cartan(f, r).unwrap();
        for (i, j) in pairs(r) {
            if d.a[i][j] == -1 {
                count += 1;
                if let Verdict::Fail(w) = check_nogo_pair(&d, i, j) {
                    return Verdict::fail(format!("{}: {w}", d.label()));
                }
            }
        }
    }
    Verdict::check(count > 0, || "no cases".into())
}

fn lemma1() -> Verdict {
    Verdict::all((2..=4u32).map(|m| {
        let found = rational_solution_set(m, 4, m + 2);
        let expected = expected_solution_set(m);
        Verdict::check(found == expected, || {
            format!("m={m}: found {found:?}, expected {expected:?}")
        })
    }))
}

fn theorem1() -> Verdict {
    Verdict::all(sweep_rewriting().iter().map(|(d, p)| {
        let data = match CoxeterRealizationData::new(d, p) {
            Ok(x) => x,
            Err(e) => return Verdict::fail(format!("{}: {e}", tag(d, p))),
        };
        match check_theorem1(&data) {
            Verdict::Pass => Verdict::Pass,
            Verdict::Fail(w) => Verdict::fail(format!("{}: {w}", tag(d, p))),
        }
    }))
}

fn taylor() -> Verdict {
    for (d, p) in sweep_rewriting() {
        let n = solve_n(&d, &p, None).unwrap();
        if let Verdict::Fail(w) = check_fg_constraints(&d, &n) {
            return Verdict::fail(format!("{}: {w}", tag(&d, &p)));
        }
        let table = FTable::new(&d, &n);
        for (i, j) in pairs(d.rank) {
            if d.a[i][j] == 0 {
                continue;
            }
            let solved = match taylor_solve_f(&d, &n, i, j, TAYLOR_ORDER) {
                Ok(s) => s,
                Err(e) => return Verdict::fail(format!("{} ({i},{j}): {e}", tag(&d, &p))),
            };
            let expanded = table.get(i, j).expand(TAYLOR_ORDER);
            if solved != expanded {
                return Verdict::fail(format!(
                    "{} ({},{}): Taylor {solved:?} != expansion {expanded:?}",
                    tag(&d, &p),
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Verdict::Pass
}

fn appendix() -> Verdict {
    for m in [0, -1, -2, -3] {
        match jing_identity(m) {
            Ok(Verdict::Pass) => {}
            Ok(Verdict::Fail(w)) => return Verdict::fail(w),
            Err(e) => return Verdict::fail(e.to_string()),
        }
    }
    let mut exponents = std::collections::BTreeSet::new();
    for (d, p) in sweep_rewriting() {
        let n = solve_n(&d, &p, None).unwrap();
        let table = FTable::new(&d, &n);
        for (i, j) in pairs(d.rank) {
            if i == j || d.a[i][j] == 0 {
                continue;
            }
            exponents.insert(d.a[i][j]);
            match serre_series_identity(&table, d.d[i], i, j) {
                Ok(Verdict::Pass) => {}
                Ok(Verdict::Fail(w)) => return Verdict::fail(format!("{}: {w}", tag(&d, &p))),
                Err(e) => return Verdict::fail(e.to_string()),
            }
        }
    }
    Verdict::check(exponents.len() == 3, || {
        format!("sweep covered only a_ij in {exponents:?}")
    })
}

fn kq() -> Verdict {
    for (d, p) in sweep_rewriting() {
        let n = solve_n(&d, &p, None).unwrap();
        for k in KQ_LEVELS {
            let twist = match solve_kq(&d, &p, &n, k, KQ_RMAX) {
                Ok(t) => t,
                Err(e) => return Verdict::fail(format!("{} k={k}: {e}", tag(&d, &p))),
            };
            if let Verdict::Fail(w) = check_kq(&twist) {
                return Verdict::fail(format!("{} k={k}: {w}", tag(&d, &p)));
            }
        }
    }
    Verdict::Pass
}

fn random_phi(rng: &mut ChaCha8Rng) -> MLPoly {
    let mut p = MLPoly::zero();
    let terms = rng.gen_range(1..=5);
    for _ in 0..terms {
        let e = rng.gen_range(-4..=4);
        let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=5);
        p.add_term(qcox_core::qseries::mono(&[(Var::U, e)]), ratio(num, den));
    }
    if p.is_zero() {
        p = MLPoly::constant(rat(1));
    }
    p
}

fn genchar() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(GENCHAR_SEED);
    for (d, p) in sweep_rewriting() {
        let n = solve_n(&d, &p, None).unwrap();
        let table = FTable::new(&d, &n);
        let mut families = vec![vec![MLPoly::one(); d.rank]];
        for _ in 0..GENCHAR_FAMILIES {
            families.push((0..d.rank).map(|_| random_phi(&mut rng)).collect());
        }
        for phi in &families {
            if let Verdict::Fail(w) = quadratic_character_check(&table, phi, GENCHAR_ORDER) {
                return Verdict::fail(format!("{}: {w}", tag(&d, &p)));
            }
        }
        // independent of φ, so certified once per realization
        if let Verdict::Fail(w) = serre_character_check(&d, &table) {
            return Verdict::fail(format!("{}: {w}", tag(&d, &p)));
        }
    }
    Verdict::Pass
}

/// Corrupting one entry of `n` must flip criteria 3, 6, 7 and 9.
fn negative_controls() -> Verdict {
    let a2 = make_cartan(Family::A, 2).unwrap();
    let perm: Permutation = "1,2".parse().unwrap();
    let good = solve_n(&a2, &perm, None).unwrap();
    let mut bad = good.clone();
    bad[0][1] += 1;

    let mut report = Vec::new();
    let mut expect_fail = |name: &str, v: Verdict| {
        if v.is_pass() {
            report.push(name.to_string());
        }
    };

    // 3: twisted character scalar with the twist read off the corrupted n
    expect_fail("character", check_character_pair(&a2, &bad, 0, 1));

    // 6: relations of the twisted embedding built from the corrupted n
    let data = CoxeterRealizationData::new(&a2, &perm).unwrap();
    let alg = NCAlgebra::new(&a2);
    let images = psi_images(&alg, &bad);
    let c = integer_pairing(&data);
    expect_fail(
        "theorem1",
        check_theorem1_pair(&alg, &images, &bad, &c, 0, 1),
    );

    // 7: a_13 = 0 in A3, so the constant structure functions must agree
    let a3 = make_cartan(Family::A, 3).unwrap();
    let mut bad3: IntMatrix = solve_n(&a3, &Permutation::identity(3), None).unwrap();
    bad3[0][2] += 1;
    expect_fail("fg-constraints", check_fg_constraints(&a3, &bad3));

    // 9: twist parameters solved for the good n, checked against the corrupted one
    let mut twist = solve_kq(&a2, &perm, &good, 1, KQ_RMAX).unwrap();
    twist.n = bad;
    expect_fail("kq", check_kq(&twist));

    Verdict::check(report.is_empty(), || {
        format!("corruption not detected by: {}", report.join(", "))
    })
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "Cayley pairing equals ε∘b, rank <= 4, all π",
            bound: secs(60),
            run: lemma2,
        },
        Criterion {
            id: 2,
            name: "Coxeter element has order exactly h",
            bound: None,
            run: coxeter_order,
        },
        Criterion {
            id: 3,
            name: "twisted Serre character scalars vanish",
            bound: None,
            run: character,
        },
        Criterion {
            id: 4,
            name: "untwisted scalar 2 - q_i - q_i^-1 is nonzero",
            bound: None,
            run: nogo,
        },
        Criterion {
            id: 5,
            name: "rational solution sets for m = 2, 3, 4",
            bound: secs(5),
            run: lemma1,
        },
        Criterion {
            id: 6,
            name: "twisted embedding relations, all pairs",
            bound: secs(120),
            run: theorem1,
        },
        Criterion {
            id: 7,
            name: "Taylor solution equals expansion through order 20",
            bound: secs(30),
            run: taylor,
        },
        Criterion {
            id: 8,
            name: "Jing identities and cleared Serre-type identities",
            bound: secs(60),
            run: appendix,
        },
        Criterion {
            id: 9,
            name: "Heisenberg consistency, direct and log forms",
            bound: secs(30),
            run: kq,
        },
        Criterion {
            id: 10,
            name: "generalized characters, 1 + 20 seeded families",
            bound: secs(30),
            run: genchar,
        },
        Criterion {
            id: 11,
            name: "single-entry corruptions are detected",
            bound: None,
            run: negative_controls,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let over = c.bound.is_some_and(|b| elapsed > b);
        let status = if verdict.is_pass() && !over {
            "PASS"
        } else {
            "FAIL"
        };
        let bound = c
            .bound
            .map(|b| format!(", bound {}s", b.as_secs()))
            .unwrap_or_default();
        println!(
            "{status} criterion {:>2}: {} ({:.2}s{bound})",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if let Verdict::Fail(w) = &verdict {
            println!("    witness: {w}");
        }
        if over {
            println!("    exceeded time bound");
        }
        if status == "FAIL" {
            failures += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
