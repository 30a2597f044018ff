//! Batch driver: expands a suite configuration into individual cases, runs
//! them on a bounded worker pool and renders a sorted report.

use std::collections::BTreeSet;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use qcox_core::cartan::{finite_types, make_cartan, CartanDatum, Family};
use qcox_core::coxeter::{
    check_cayley_lemma, check_character_pair, check_coxeter_element, check_eqpi, check_nogo_pair,
    solve_n, CoxeterRealizationData, Permutation,
};
use qcox_core::ncalg::{check_theorem1_pair, integer_pairing, psi_images, NCAlgebra};
use qcox_core::qnum::{
    expected_solution_set, q_binomial_theorem_check, ratio, rational_solution_set,
};
use qcox_core::qseries::fseries::check_fg_pair;
use qcox_core::qseries::{
    check_affine_pack, check_kq, jing_identity, mono, quadratic_character_check,
    serre_character_check, serre_series_identity, solve_kq, taylor_solve_f, FTable, MLPoly, Var,
};
use qcox_core::{Result, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Cayley,
    Eqpi,
    Character,
    Nogo,
    Lemma1,
    Theorem1,
    Fseries,
    SerreSeries,
    Jing,
    Kq,
    AffinePack,
    Genchar,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Cayley,
        Check::Eqpi,
        Check::Character,
        Check::Nogo,
        Check::Lemma1,
        Check::Theorem1,
        Check::Fseries,
        Check::SerreSeries,
        Check::Jing,
        Check::Kq,
        Check::AffinePack,
        Check::Genchar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cayley => "cayley",
            Check::Eqpi => "eqpi",
            Check::Character => "character",
            Check::Nogo => "nogo",
            Check::Lemma1 => "lemma1",
            Check::Theorem1 => "theorem1",
            Check::Fseries => "fseries",
            Check::SerreSeries => "serre-series",
            Check::Jing => "jing",
            Check::Kq => "kq",
            Check::AffinePack => "affine-pack",
            Check::Genchar => "genchar",
        }
    }

    /// Checks that only touch integer matrices and scalars; these sweep
    /// every selected type, the others stay on small ranks by default.
    pub fn is_matrix_level(self) -> bool {
        matches!(
            self,
            Check::Cayley | Check::Eqpi | Check::Character | Check::Nogo | Check::Lemma1
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                format!(
                    "unknown check '{s}' (expected one of: {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeSelection {
    Single(Family, usize),
    AllFinite { max_rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub types: TypeSelection,
    /// `None` sweeps all `l!` permutations.
    pub perm: Option<Permutation>,
    pub checks: BTreeSet<Check>,
    pub order: usize,
    pub rmax: usize,
    /// `None` runs levels 0, 1 and 2.
    pub level: Option<i64>,
    pub jobs: Option<usize>,
    pub format: Format,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            types: TypeSelection::AllFinite { max_rank: 4 },
            perm: None,
            checks: Check::ALL.into_iter().collect(),
            order: 16,
            rmax: 12,
            level: None,
            jobs: None,
            format: Format::Text,
        }
    }
}

pub const DEFAULT_LEVELS: [i64; 3] = [0, 1, 2];

/// Random `φ` families per realization in the generalized character check.
const GENCHAR_FAMILIES: usize = 6;
const GENCHAR_SEED: u64 = 0x5eed_c0de;

impl SuiteConfig {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.order < 1 {
            return Err("--order must be at least 1".into());
        }
        if self.rmax < 1 {
            return Err("--rmax must be at least 1".into());
        }
        if self.checks.is_empty() {
            return Err("no checks selected".into());
        }
        if self.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        match &self.types {
            TypeSelection::Single(f, r) => {
                make_cartan(*f, *r).map_err(|e| e.to_string())?;
                if let Some(p) = &self.perm {
                    if p.len() != *r {
                        return Err(format!("permutation {p} does not have length {r}"));
                    }
                }
            }
            TypeSelection::AllFinite { max_rank } => {
                if *max_rank < 1 {
                    return Err("--max-rank must be at least 1".into());
                }
                if self.perm.is_some() {
                    return Err("--perm needs a single --family/--rank".into());
                }
            }
        }
        Ok(())
    }

    fn levels(&self) -> Vec<i64> {
        match self.level {
            Some(k) => vec![k],
            None => DEFAULT_LEVELS.to_vec(),
        }
    }

    /// Types swept by `check`.
    fn types_for(&self, check: Check) -> Vec<(Family, usize)> {
        match self.types {
            TypeSelection::Single(f, r) => vec![(f, r)],
            TypeSelection::AllFinite { max_rank } => finite_types(max_rank)
                .into_iter()
                .filter(|&(f, r)| check.is_matrix_level() || r <= 3 || (f, r) == (Family::G, 2))
                .collect(),
        }
    }

    fn perms_for(&self, rank: usize) -> Vec<Permutation> {
        match &self.perm {
            Some(p) => vec![p.clone()],
            None => Permutation::all(rank),
        }
    }
}

/// One unit of work; pairs are zero-based.
#[derive(Debug, Clone)]
enum Case {
    Realization {
        check: Check,
        datum: CartanDatum,
        perm: Permutation,
    },
    Pair {
        check: Check,
        datum: CartanDatum,
        perm: Permutation,
        i: usize,
        j: usize,
    },
    Level {
        check: Check,
        datum: CartanDatum,
        perm: Permutation,
        level: i64,
    },
    Nogo {
        datum: CartanDatum,
        i: usize,
        j: usize,
    },
    Lemma1 {
        m: u32,
    },
    Jing {
        m: i64,
    },
}

impl Case {
    fn id(&self) -> String {
        match self {
            Case::Realization { check, datum, perm } => format!("{check}/{datum}/{perm}"),
            Case::Pair {
                check,
                datum,
                perm,
                i,
                j,
            } => {
                format!("{check}/{datum}/{perm}/{},{}", i + 1, j + 1)
            }
            Case::Level {
                check,
                datum,
                perm,
                level,
            } => {
                format!("{check}/{datum}/{perm}/k={level}")
            }
            Case::Nogo { datum, i, j } => format!("nogo/{datum}/*/{},{}", i + 1, j + 1),
            Case::Lemma1 { m } => format!("lemma1/m={m}"),
            Case::Jing { m } => format!("jing/m={m}"),
        }
    }
}

fn expand(config: &SuiteConfig) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for &check in &config.checks {
        match check {
            Check::Lemma1 => cases.extend((2..=4).map(|m| Case::Lemma1 { m })),
            Check::Jing => cases.extend([0, -1, -2, -3].map(|m| Case::Jing { m })),
            Check::Nogo => {
                for (f, r) in config.types_for(check) {
                    let datum = make_cartan(f, r)?;
                    for i in 0..r {
                        for j in 0..r {
                            if datum.a[i][j] == -1 {
                                cases.push(Case::Nogo {
                                    datum: datum.clone(),
                                    i,
                                    j,
                                });
                            }
                        }
                    }
                }
            }
            _ => {
                for (f, r) in config.types_for(check) {
                    let datum = make_cartan(f, r)?;
                    for perm in config.perms_for(r) {
                        realization_cases(config, check, &datum, &perm, &mut cases);
                    }
                }
            }
        }
    }
    Ok(cases)
}

fn realization_cases(
    config: &SuiteConfig,
    check: Check,
    datum: &CartanDatum,
    perm: &Permutation,
    out: &mut Vec<Case>,
) {
    let l = datum.rank;
    let pair = |i, j| Case::Pair {
        check,
        datum: datum.clone(),
        perm: perm.clone(),
        i,
        j,
    };
    let pairs = (0..l).flat_map(|i| (0..l).map(move |j| (i, j)));
    match check {
        Check::Cayley | Check::Eqpi | Check::Genchar => out.push(Case::Realization {
            check,
            datum: datum.clone(),
            perm: perm.clone(),
        }),
        Check::Character | Check::SerreSeries => out.extend(
            pairs
                .filter(|&(i, j)| i != j && datum.a[i][j] != 0)
                .map(|(i, j)| pair(i, j)),
        ),
        Check::Theorem1 | Check::Fseries => out.extend(pairs.map(|(i, j)| pair(i, j))),
        Check::Kq | Check::AffinePack => {
            out.extend(config.levels().into_iter().map(|level| Case::Level {
                check,
                datum: datum.clone(),
                perm: perm.clone(),
                level,
            }))
        }
        Check::Nogo | Check::Lemma1 | Check::Jing => unreachable!("not per realization"),
    }
}

fn random_phi(rng: &mut ChaCha8Rng) -> MLPoly {
    let mut p = MLPoly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let e = rng.gen_range(-4..=4);
        let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
        p.add_term(mono(&[(Var::U, e)]), ratio(num, rng.gen_range(1..=5)));
    }
    if p.is_zero() {
        MLPoly::one()
    } else {
        p
    }
}

fn flatten(r: Result<Verdict>) -> Verdict {
    r.unwrap_or_else(|e| Verdict::fail(format!("error: {e}")))
}

fn run_case(config: &SuiteConfig, case: &Case) -> Verdict {
    match case {
        Case::Lemma1 { m } => q_binomial_theorem_check(*m).and(|| {
            let found = rational_solution_set(*m, 4, m + 2);
            let expected = expected_solution_set(*m);
            Verdict::check(found == expected, || {
                format!("found {found:?}, expected {expected:?}")
            })
        }),
        Case::Jing { m } => flatten(jing_identity(*m)),
        Case::Nogo { datum, i, j } => check_nogo_pair(datum, *i, *j),
        Case::Realization { check, datum, perm } => match check {
            Check::Cayley => {
                check_cayley_lemma(datum, perm).and(|| check_coxeter_element(datum, perm))
            }
            Check::Eqpi => check_eqpi(datum, perm),
            Check::Genchar => flatten(genchar(config, datum, perm)),
            _ => unreachable!(),
        },
        Case::Pair {
            check,
            datum,
            perm,
            i,
            j,
        } => flatten(run_pair(config, *check, datum, perm, *i, *j)),
        Case::Level {
            check,
            datum,
            perm,
            level,
        } => flatten((|| {
            let n = solve_n(datum, perm, None)?;
            Ok(match check {
                Check::Kq => check_kq(&solve_kq(datum, perm, &n, *level, config.rmax)?),
                Check::AffinePack => check_affine_pack(datum, &n, *level, config.order),
                _ => unreachable!(),
            })
        })()),
    }
}

fn run_pair(
    config: &SuiteConfig,
    check: Check,
    datum: &CartanDatum,
    perm: &Permutation,
    i: usize,
    j: usize,
) -> Result<Verdict> {
    let n = solve_n(datum, perm, None)?;
    Ok(match check {
        Check::Character => check_character_pair(datum, &n, i, j),
        Check::Theorem1 => {
            let data = CoxeterRealizationData::new(datum, perm)?;
            let alg = NCAlgebra::new(datum);
            let images = psi_images(&alg, &n);
            check_theorem1_pair(&alg, &images, &n, &integer_pairing(&data), i, j)
        }
        Check::Fseries => {
            let table = FTable::new(datum, &n);
            let v = check_fg_pair(&table, i, j);
            if !v.is_pass() || datum.a[i][j] == 0 {
                return Ok(v);
            }
            let solved = taylor_solve_f(datum, &n, i, j, config.order)?;
            let expanded = table.get(i, j).expand(config.order);
            if solved != expanded {
                return Ok(Verdict::fail(format!(
                    "Taylor {} != expansion {}",
                    solved.render(),
                    expanded.render()
                )));
            }
            if i == j {
                return Ok(Verdict::Pass);
            }
            let (cij, cji) = (table.get(i, j).is_constant(), table.get(j, i).is_constant());
            Verdict::check(cij != cji, || {
                format!("constancy of F_ij, F_ji is ({cij}, {cji}), expected exactly one")
            })
        }
        Check::SerreSeries => serre_series_identity(&FTable::new(datum, &n), datum.d[i], i, j)?,
        _ => unreachable!(),
    })
}

fn genchar(config: &SuiteConfig, datum: &CartanDatum, perm: &Permutation) -> Result<Verdict> {
    let n = solve_n(datum, perm, None)?;
    let table = FTable::new(datum, &n);
    // seeded per realization so the draw does not depend on scheduling
    let seed = GENCHAR_SEED
        ^ (datum.rank as u64) << 32
        ^ (datum.family.letter() as u64) << 40
        ^ perm.as_slice().iter().fold(0u64, |h, &x| h * 31 + x as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut families = vec![vec![MLPoly::one(); datum.rank]];
    for _ in 0..GENCHAR_FAMILIES {
        families.push((0..datum.rank).map(|_| random_phi(&mut rng)).collect());
    }
    Ok(Verdict::all(
        families
            .iter()
            .map(|phi| quadratic_character_check(&table, phi, config.order)),
    )
    .and(|| serre_character_check(datum, &table)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub status: Status,
    pub witness: String,
    pub ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.summary.fail
    }
}

fn execute(config: &SuiteConfig, case: &Case) -> CaseReport {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(|| run_case(config, case)))
        .unwrap_or_else(|_| Verdict::fail("panic while running case"));
    let ms = start.elapsed().as_millis() as u64;
    let (status, witness) = match verdict {
        Verdict::Pass => (Status::Pass, String::new()),
        Verdict::Fail(w) => (Status::Fail, w),
    };
    CaseReport {
        id: case.id(),
        status,
        witness,
        ms,
    }
}

fn suite_name(config: &SuiteConfig) -> String {
    let types = match &config.types {
        TypeSelection::Single(f, r) => format!("{f}{r}"),
        TypeSelection::AllFinite { max_rank } => format!("finite<= {max_rank}"),
    };
    let checks: Vec<_> = config.checks.iter().map(|c| c.name()).collect();
    format!(
        "qcox verify [{}] {types} N={} rmax={}",
        checks.join(","),
        config.order,
        config.rmax
    )
}

/// Number of workers: explicit value, then `QCOX_JOBS`, then rayon's default.
pub fn resolve_jobs(explicit: Option<usize>) -> Option<usize> {
    explicit.or_else(|| {
        std::env::var("QCOX_JOBS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&j| j > 0)
    })
}

/// Validates the configuration, then runs every case. Configuration errors
/// surface before any case starts; failing cases never stop the run.
pub fn run_suite(config: &SuiteConfig) -> std::result::Result<Report, String> {
    config.validate()?;
    let cases = expand(config).map_err(|e| e.to_string())?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = resolve_jobs(config.jobs) {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| e.to_string())?;
    let mut reports: Vec<CaseReport> =
        pool.install(|| cases.par_iter().map(|c| execute(config, c)).collect());
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = reports.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(format!("duplicate case id {}", w[0].id));
    }
    let fail = reports.iter().filter(|r| r.status == Status::Fail).count();
    Ok(Report {
        suite: suite_name(config),
        summary: Summary {
            pass: reports.len() - fail,
            fail,
        },
        cases: reports,
    })
}

/// Rendered report and the process exit status it implies.
pub fn emit_report(report: &Report, format: Format) -> (String, u8) {
    let body = match format {
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let tag = if c.status == Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                s.push_str(&format!("{tag} {} ({}ms)\n", c.id, c.ms));
                if c.status == Status::Fail {
                    s.push_str(&format!("    witness: {}\n", c.witness));
                }
            }
            s.push_str(&format!(
                "summary: {} passed, {} failed\n",
                report.summary.pass, report.summary.fail
            ));
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    (body, if report.failures() == 0 { 0 } else { 1 })
}
