//! Symmetric-polynomial identities: Jing's identity and the cleared form of
//! the multi-point Serre-type relation for the structure functions.

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qnum::{rat, sym_binomial};
use crate::qseries::fseries::{FEntry, FTable};
use crate::qseries::{mono, MLPoly, Var};
use crate::verdict::Verdict;

/// Sign of a permutation by inversion count.
fn sign(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|a| ((a + 1)..perm.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| perm[a] > perm[b])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn ratio_of(num: Var, den: Var) -> MLPoly {
    MLPoly::monomial(mono(&[(num, 1), (den, -1)]))
}

fn sum_parallel(parts: Vec<MLPoly>) -> MLPoly {
    parts.into_iter().fold(MLPoly::zero(), |mut acc, p| {
        acc += &p;
        acc
    })
}

/// Expands
/// `sum_π (-1)^{l(π)} sum_k [1-m k]_t prod_{p<q}(z_π(q) - t² z_π(p))
///  prod_{r<=k}(1 - t^m z_π(r)/w) prod_{s>k}(z_π(s)/w - t^m)`
/// and returns it; the identity asserts this is zero.
pub fn jing_polynomial(m: i64) -> Result<MLPoly> {
    if m > 0 {
        return Err(Error::InvalidArgument(format!(
            "Jing's identity needs m <= 0, got {m}"
        )));
    }
    let size = (1 - m) as usize;
    let zs: Vec<Var> = (0..size).map(Var::z).collect();
    let t2 = MLPoly::var_pow(Var::T, 2);
    let tm = MLPoly::var_pow(Var::T, m as i32);
    let binoms: Vec<MLPoly> = (0..=size as u32)
        .map(|k| MLPoly::from_laurent(&sym_binomial(size as u32, k, 1), Var::T))
        .collect();
    let parts: Vec<MLPoly> = (0..size)
        .permutations(size)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|pi| {
            let mut vandermonde = MLPoly::from_int(sign(pi));
            for p in 0..size {
                for q in (p + 1)..size {
                    let f = &MLPoly::var(zs[pi[q]]) - &(&t2 * &MLPoly::var(zs[pi[p]]));
                    vandermonde = &vandermonde * &f;
                }
            }
            let mut inner = MLPoly::zero();
            for (k, binom) in binoms.iter().enumerate() {
                let mut term = binom.clone();
                for (r, &z) in pi.iter().map(|&x| &zs[x]).enumerate() {
                    let x = ratio_of(z, Var::W);
                    let f = if r < k {
                        &MLPoly::one() - &(&tm * &x)
                    } else {
                        &x - &tm
                    };
                    term = &term * &f;
                }
                inner += &term;
            }
            &vandermonde * &inner
        })
        .collect();
    Ok(sum_parallel(parts))
}

pub fn jing_identity(m: i64) -> Result<Verdict> {
    let p = jing_polynomial(m)?;
    Ok(Verdict::check(p.is_zero(), || {
        format!("Jing residual at m={m}: {}", p.render())
    }))
}

/// A denominator factor `1 - q^e x` of the common clearing denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Clearing {
    /// `1 - q^{b_ii} z_b / z_a`, stored as `(a, b)`.
    Diag(usize, usize),
    /// `1 - q^{b_ij} z_s / w`.
    ZOverW(usize),
    /// `1 - q^{b_ij} w / z_s`.
    WOverZ(usize),
}

/// The cleared Serre-type polynomial `D · P_ij`, where
/// `P_ij = sum_π sum_k (-1)^k [1-a_ij k]_{q_i} prod_{p<q} F_ii(z_π(q)/z_π(p))
///   prod_{r<=k} F_ji(w/z_π(r)) prod_{s>k} F_ij(z_π(s)/w)`
/// and `D` collects one factor per non-constant slot denominator:
/// `prod_{a≠b}(1 - q^{b_ii} z_b/z_a)`, then `prod_s (1 - q^{b_ij} z_s/w)`
/// unless `F_ij` is constant, and `prod_s (1 - q^{b_ij} w/z_s)` unless
/// `F_ji` is constant.
///
/// Each term is then the product of slot numerators (or constants) with
/// the factors of `D` its slots did not use.
pub fn serre_series_polynomial(table: &FTable, di: i64, i: usize, j: usize) -> Result<MLPoly> {
    if i == j || table.a[i][j] == 0 {
        return Err(Error::InvalidArgument(format!(
            "Serre-type series needs i != j and a_ij != 0, got ({},{})",
            i + 1,
            j + 1
        )));
    }
    let size = (1 - table.a[i][j]) as usize;
    let zs: Vec<Var> = (0..size).map(Var::z).collect();
    let bii = table.b[i][i];
    let bij = table.b[i][j];
    let fii = Slot::new(*table.get(i, i));
    let fij = Slot::new(*table.get(i, j));
    let fji = Slot::new(*table.get(j, i));

    let factor = |c: Clearing| -> MLPoly {
        let (e, x) = match c {
            Clearing::Diag(a, b) => (bii, ratio_of(zs[b], zs[a])),
            Clearing::ZOverW(s) => (bij, ratio_of(zs[s], Var::W)),
            Clearing::WOverZ(s) => (bij, ratio_of(Var::W, zs[s])),
        };
        &MLPoly::one() - &(&MLPoly::q_pow(e) * &x)
    };
    let binoms: Vec<MLPoly> = (0..=size as u32)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            MLPoly::from_laurent(&sym_binomial(size as u32, k, 2 * di), Var::V).scale(&rat(sign))
        })
        .collect();

    let parts: Vec<MLPoly> = (0..size)
        .permutations(size)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|pi| {
            // diagonal part, shared by every k
            let mut diag = MLPoly::one();
            for p in 0..size {
                for q in (p + 1)..size {
                    let (a, b) = (pi[p], pi[q]);
                    diag = fii.apply(diag, &ratio_of(zs[b], zs[a]));
                    if fii.constant {
                        diag = &diag * &factor(Clearing::Diag(a, b));
                    }
                    diag = &diag * &factor(Clearing::Diag(b, a));
                }
            }
            let mut inner = MLPoly::zero();
            for (k, binom) in binoms.iter().enumerate() {
                let mut term = binom.clone();
                for (r, &s) in pi.iter().enumerate() {
                    if r < k {
                        term = fji.apply(term, &ratio_of(Var::W, zs[s]));
                        if !fij.constant {
                            term = &term * &factor(Clearing::ZOverW(s));
                        }
                    } else {
                        term = fij.apply(term, &ratio_of(zs[s], Var::W));
                        if !fji.constant {
                            term = &term * &factor(Clearing::WOverZ(s));
                        }
                    }
                }
                inner += &term;
            }
            &diag * &inner
        })
        .collect();
    Ok(sum_parallel(parts))
}

/// One structure function as it enters a cleared product.
struct Slot {
    entry: FEntry,
    constant: bool,
}

impl Slot {
    fn new(entry: FEntry) -> Self {
        Self {
            constant: entry.pole.is_none() || entry.is_constant(),
            entry,
        }
    }

    /// Multiplies `acc` by this slot's value at `x`: the constant, or the
    /// numerator when a clearing factor absorbs the denominator.
    fn apply(&self, acc: MLPoly, x: &MLPoly) -> MLPoly {
        if self.constant {
            acc.mul_monomial(&mono(&[(Var::V, 2 * self.entry.const_exp as i32)]))
        } else {
            &acc * &self.entry.numerator_at(x)
        }
    }
}

pub fn serre_series_identity(table: &FTable, di: i64, i: usize, j: usize) -> Result<Verdict> {
    let p = serre_series_polynomial(table, di, i, j)?;
    Ok(Verdict::check(p.is_zero(), || {
        format!(
            "({},{}) cleared Serre-type residual with {} terms: {}",
            i + 1,
            j + 1,
            p.num_terms(),
            p.render()
        )
    }))
}
