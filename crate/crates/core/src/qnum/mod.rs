//! Exact q-arithmetic: Laurent polynomials and rational functions in the
//! base variable `v` (with `q = v^2`), symmetric q-integers and
//! q-binomials, and the scalar character identities built from them.

mod laurent;
mod ratfunc;

use std::collections::BTreeSet;

use num_integer::Integer;

pub use laurent::{rat, ratio, LaurentPoly, Rational};
pub use ratfunc::RatFunc;

use crate::error::{Error, Result};
use crate::qseries::{MLPoly, Var};
use crate::verdict::Verdict;

/// Symmetric q-integer `[n]_x = (x^n - x^-n)/(x - x^-1)` with `x = v^step`.
pub(crate) fn sym_int(n: i64, step: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for j in 0..n.abs() {
        p.add_term(step * (n.abs() - 1 - 2 * j), rat(1));
    }
    if n < 0 {
        -p
    } else {
        p
    }
}

/// Gaussian binomial `[m k]_x` with `x = v^step`, by exact division of
/// q-factorials.
pub(crate) fn sym_binomial(m: u32, k: u32, step: i64) -> LaurentPoly {
    assert!(k <= m, "binomial index out of range");
    let k = k.min(m - k);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for j in 0..k {
        num = &num * &sym_int((m - j) as i64, step);
        den = &den * &sym_int((j + 1) as i64, step);
    }
    let quotient = RatFunc::new(num, den);
    quotient
        .as_poly()
        .cloned()
        .expect("q-binomial is a Laurent polynomial")
}

/// `[n]_{q^scale}`.
pub fn q_int(n: i64, scale: u32) -> LaurentPoly {
    sym_int(n, 2 * scale as i64)
}

/// `[m k]_{q^scale}`.
pub fn q_binomial(m: u32, k: u32, scale: u32) -> Result<LaurentPoly> {
    if k > m {
        return Err(Error::InvalidArgument(format!(
            "q-binomial index k={k} exceeds m={m}"
        )));
    }
    Ok(sym_binomial(m, k, 2 * scale as i64))
}

/// Checks `sum_k (-z)^k [m k]_t = prod_{p<m} (1 - t^{m-1-2p} z)` as an
/// identity of polynomials in `t` and `z`.
pub fn q_binomial_theorem_check(m: u32) -> Verdict {
    let z = MLPoly::var(Var::Z1);
    let mut lhs = MLPoly::zero();
    for k in 0..=m {
        let binom = MLPoly::from_laurent(&sym_binomial(m, k, 1), Var::T);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        lhs += &(&binom * &z.pow(k)).scale(&rat(sign));
    }
    let mut rhs = MLPoly::one();
    for p in 0..m as i32 {
        let factor = &MLPoly::one() - &(&MLPoly::var_pow(Var::T, m as i32 - 1 - 2 * p) * &z);
        rhs = &rhs * &factor;
    }
    let residual = &lhs - &rhs;
    Verdict::check(residual.is_zero(), || {
        format!(
            "q-binomial theorem residual at m={m}: {}",
            residual.render()
        )
    })
}

/// All rationals `c = p/D` with `D <= max_denominator`, `|c| <= bound` for
/// which `sum_k (-1)^k [m k]_t t^{kc}` vanishes identically in `t`.
///
/// Each candidate is tested exactly after the substitution `t = s^D`,
/// which turns `t^{kc}` into the integral power `s^{kp}`.
pub fn rational_solution_set(m: u32, max_denominator: u32, bound: u32) -> BTreeSet<Rational> {
    let mut found = BTreeSet::new();
    for den in 1..=max_denominator as i64 {
        let binoms: Vec<LaurentPoly> = (0..=m).map(|k| sym_binomial(m, k, den)).collect();
        let lim = bound as i64 * den;
        for p in -lim..=lim {
            if p.gcd(&den) != 1 {
                continue;
            }
            let mut sum = LaurentPoly::zero();
            for (k, b) in binoms.iter().enumerate() {
                let term = b.shift(k as i64 * p);
                if k % 2 == 0 {
                    sum += &term;
                } else {
                    sum -= &term;
                }
            }
            if sum.is_zero() {
                found.insert(ratio(p, den));
            }
        }
    }
    found
}

/// The set `{m-1-2p : p = 0..m-1}`.
pub fn expected_solution_set(m: u32) -> BTreeSet<Rational> {
    (0..m as i64).map(|p| rat(m as i64 - 1 - 2 * p)).collect()
}

/// `sum_{r=0}^{m} (-1)^r q^{r * q_exp} [m r]_{q^scale}`.
///
/// `q_exp` is an integral exponent of `q`; this is the value of a twisted
/// Serre combination under the character sending every generator to 1.
pub fn serre_character_scalar(m: u32, q_exp: i64, scale: u32) -> LaurentPoly {
    let mut sum = LaurentPoly::zero();
    for r in 0..=m {
        let term = sym_binomial(m, r, 2 * scale as i64).shift(2 * q_exp * r as i64);
        if r % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
    }
    sum
}
