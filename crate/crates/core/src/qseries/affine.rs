//! Affine twist data: the scalar consistency equations for the Heisenberg
//! parameters `n_ij^{±r}`, the associated formal series, and the
//! generalized character check.

use crate::cartan::{CartanDatum, IntMatrix};
use crate::coxeter::Permutation;
use crate::error::{Error, Result};
use crate::qnum::{rat, ratio, RatFunc};
use crate::qseries::appendix::serre_series_identity;
use crate::qseries::fseries::FTable;
use crate::qseries::zpoly::{ZPoly, ZRat};
use crate::qseries::{mono, MLPoly, TruncSeries, Var};
use crate::verdict::Verdict;

pub type RatMatrix = Vec<Vec<RatFunc>>;

fn zero_matrix(l: usize) -> RatMatrix {
    vec![vec![RatFunc::zero(); l]; l]
}

/// Gauss-Jordan solve of `a x = rhs` over `Q(v)`.
pub fn solve_linear(a: &RatMatrix, rhs: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let n = a.len();
    let mut m: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut x = row.clone();
            x.push(r.clone());
            x
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {}", col + 1)))?;
        m.swap(col, pivot);
        let inv = m[col][col].inv();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n].clone()).collect())
}

pub fn invert(a: &RatMatrix) -> Result<RatMatrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<RatFunc> = (0..n)
            .map(|i| {
                if i == k {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                }
            })
            .collect();
        cols.push(solve_linear(a, &e)?);
    }
    Ok((0..n)
        .map(|i| (0..n).map(|k| cols[k][i].clone()).collect())
        .collect())
}

/// `B^r_ij = q^{r b_ij} - q^{-r b_ij}`.
pub fn b_matrix(datum: &CartanDatum, r: i64) -> RatMatrix {
    datum
        .b
        .iter()
        .map(|row| {
            row.iter()
                .map(|&b| &RatFunc::q_pow(r * b) - &RatFunc::q_pow(-r * b))
                .collect()
        })
        .collect()
}

/// Heisenberg twist parameters for one Coxeter realization at integer level `k`.
#[derive(Debug, Clone)]
pub struct AffineTwistData {
    pub datum: CartanDatum,
    pub perm: Permutation,
    pub n: IntMatrix,
    pub level: i64,
    pub rmax: usize,
    /// `n_pos[r-1][i][j] = n_ij^{r}`.
    pub n_pos: Vec<RatMatrix>,
    /// `n_neg[r-1][i][j] = n_ij^{-r}`.
    pub n_neg: Vec<RatMatrix>,
}

impl AffineTwistData {
    pub fn rank(&self) -> usize {
        self.datum.rank
    }
}

/// `(1/r)(q^{r b_ij} - q^{r(d_i n_ji - d_j n_ij)})`.
fn kq_rhs(datum: &CartanDatum, n: &IntMatrix, i: usize, j: usize, r: i64) -> RatFunc {
    let c = datum.d[i] * n[j][i] - datum.d[j] * n[i][j];
    (&RatFunc::q_pow(r * datum.b[i][j]) - &RatFunc::q_pow(r * c)).scale(&ratio(1, r))
}

/// `(q^{kr} - q^{-kr}) r (B^r)^{-1}`, the kernel of the quadratic term.
fn quadratic_kernel(datum: &CartanDatum, level: i64, r: i64) -> Result<RatMatrix> {
    let binv = invert(&b_matrix(datum, r))?;
    let s = (&RatFunc::q_pow(level * r) - &RatFunc::q_pow(-level * r)).scale(&rat(r));
    Ok(binv
        .iter()
        .map(|row| row.iter().map(|x| x * &s).collect())
        .collect())
}

/// Exponent of the structure function at order `r`:
/// `(n_ij^{-r} - n_ji^{r}) q^{-kr/2} - n_ik^{-r} n_jl^{r} r (B^r)^{-1}_kl (q^{kr} - q^{-kr})`.
fn kq_lhs(twist: &AffineTwistData, kernel: &RatMatrix, i: usize, j: usize, r: usize) -> RatFunc {
    let l = twist.rank();
    let neg = &twist.n_neg[r - 1];
    let pos = &twist.n_pos[r - 1];
    let half = RatFunc::v_pow(-twist.level * r as i64);
    let mut out = &(&neg[i][j] - &pos[j][i]) * &half;
    for k in 0..l {
        if neg[i][k].is_zero() {
            continue;
        }
        for m in 0..l {
            if pos[j][m].is_zero() || kernel[k][m].is_zero() {
                continue;
            }
            out = &out - &(&(&neg[i][k] * &pos[j][m]) * &kernel[k][m]);
        }
    }
    out
}

/// Solves for `n^{r}` given `n^{-r}`. For each `j` the row `x = n_j·^{r}`
/// satisfies `(q^{-kr/2} I + W) x = n_·j^{-r} q^{-kr/2} - rhs_·j` with
/// `W = n^{-r} · kernel`.
pub fn solve_kq_general(
    datum: &CartanDatum,
    perm: &Permutation,
    n: &IntMatrix,
    level: i64,
    rmax: usize,
    n_neg: Vec<RatMatrix>,
) -> Result<AffineTwistData> {
    if rmax == 0 {
        return Err(Error::InvalidArgument("rmax must be at least 1".into()));
    }
    if n_neg.len() != rmax {
        return Err(Error::InvalidArgument(format!(
            "expected {rmax} negative-mode matrices, got {}",
            n_neg.len()
        )));
    }
    let l = datum.rank;
    let mut n_pos = Vec::with_capacity(rmax);
    for r in 1..=rmax {
        let neg = &n_neg[r - 1];
        let half = RatFunc::v_pow(-level * r as i64);
        let mut pos = zero_matrix(l);
        if neg.iter().flatten().all(RatFunc::is_zero) {
            for i in 0..l {
                for j in 0..l {
                    pos[j][i] = -(&kq_rhs(datum, n, i, j, r as i64) * &half.inv());
                }
            }
        } else {
            let kernel = quadratic_kernel(datum, level, r as i64)?;
            let w: RatMatrix = (0..l)
                .map(|i| {
                    (0..l)
                        .map(|m| {
                            (0..l).fold(RatFunc::zero(), |acc, k| {
                                &acc + &(&neg[i][k] * &kernel[k][m])
                            })
                        })
                        .collect()
                })
                .collect();
            let mut a = w;
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = &row[i] + &half;
            }
            for j in 0..l {
                let rhs: Vec<RatFunc> = (0..l)
                    .map(|i| &(&neg[i][j] * &half) - &kq_rhs(datum, n, i, j, r as i64))
                    .collect();
                pos[j] = solve_linear(&a, &rhs)?;
            }
        }
        n_pos.push(pos);
    }
    let twist = AffineTwistData {
        datum: datum.clone(),
        perm: perm.clone(),
        n: n.clone(),
        level,
        rmax,
        n_pos,
        n_neg,
    };
    match check_kq(&twist) {
        Verdict::Pass => Ok(twist),
        Verdict::Fail(w) => Err(Error::Invariant(w)),
    }
}

/// The solution with all negative modes zero:
/// `n_ji^{r} = -q^{kr/2} (1/r)(q^{r b_ij} - q^{r(d_i n_ji - d_j n_ij)})`.
pub fn solve_kq(
    datum: &CartanDatum,
    perm: &Permutation,
    n: &IntMatrix,
    level: i64,
    rmax: usize,
) -> Result<AffineTwistData> {
    let l = datum.rank;
    solve_kq_general(datum, perm, n, level, rmax, vec![zero_matrix(l); rmax])
}

/// Direct check: every `(i, j, r)` satisfies the consistency equation.
pub fn check_kq_direct(twist: &AffineTwistData) -> Verdict {
    let l = twist.rank();
    for r in 1..=twist.rmax {
        let has_neg = twist.n_neg[r - 1].iter().flatten().any(|x| !x.is_zero());
        let kernel = if has_neg {
            match quadratic_kernel(&twist.datum, twist.level, r as i64) {
                Ok(k) => k,
                Err(e) => return Verdict::fail(format!("B^{r} is singular: {e}")),
            }
        } else {
            zero_matrix(l)
        };
        for i in 0..l {
            for j in 0..l {
                let lhs = kq_lhs(twist, &kernel, i, j, r);
                let rhs = kq_rhs(&twist.datum, &twist.n, i, j, r as i64);
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return Verdict::fail(format!(
                        "({},{}) r={r}: residual {}",
                        i + 1,
                        j + 1,
                        residual.render()
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// Log-form check: the order-`r` coefficient of `log(F_ij(z)/F_ij(0))`,
/// computed from the rational structure function, equals the exponent
/// built from the twist parameters.
pub fn check_kq_log(twist: &AffineTwistData) -> Verdict {
    let l = twist.rank();
    let table = FTable::new(&twist.datum, &twist.n);
    let mut kernels = Vec::with_capacity(twist.rmax);
    for r in 1..=twist.rmax {
        let has_neg = twist.n_neg[r - 1].iter().flatten().any(|x| !x.is_zero());
        kernels.push(if has_neg {
            match quadratic_kernel(&twist.datum, twist.level, r as i64) {
                Ok(k) => k,
                Err(e) => return Verdict::fail(format!("B^{r} is singular: {e}")),
            }
        } else {
            zero_matrix(l)
        });
    }
    for i in 0..l {
        for j in 0..l {
            let e = table.get(i, j);
            let normalized = e.expand(twist.rmax).scale(&e.constant().inv());
            let log = match normalized.log() {
                Ok(s) => s,
                Err(err) => return Verdict::fail(format!("({},{}): {err}", i + 1, j + 1)),
            };
            for r in 1..=twist.rmax {
                let expected = kq_lhs(twist, &kernels[r - 1], i, j, r);
                if log.coeff(r) != &expected {
                    return Verdict::fail(format!(
                        "({},{}) r={r}: log coefficient {} != exponent {}",
                        i + 1,
                        j + 1,
                        log.coeff(r).render(),
                        expected.render()
                    ));
                }
            }
        }
    }
    Verdict::Pass
}

/// Both forms; they must agree.
pub fn check_kq(twist: &AffineTwistData) -> Verdict {
    let direct = check_kq_direct(twist);
    let log = check_kq_log(twist);
    match (direct.is_pass(), log.is_pass()) {
        (true, true) => Verdict::Pass,
        (false, false) => direct,
        (true, false) => Verdict::fail(format!("log form disagrees with direct form: {log}")),
        (false, true) => Verdict::fail(format!("direct form disagrees with log form: {direct}")),
    }
}

/// The four series attached to one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePairSeries {
    pub g: TruncSeries,
    pub m: TruncSeries,
    pub big_g: TruncSeries,
    pub f_minus: TruncSeries,
}

/// `g_ij(z) = q^{-b_ij}(1 - q^{b_ij} z)/(1 - q^{-b_ij} z)`.
fn g_rational(b: i64) -> ZRat {
    let q = RatFunc::q_pow;
    ZRat::new(
        ZPoly::from_coeffs(0, vec![q(-b), -RatFunc::one()]),
        ZPoly::from_coeffs(0, vec![RatFunc::one(), -q(-b)]),
    )
}

/// Series route: every operation is done on truncated series.
pub fn affine_pair_series(
    table: &FTable,
    i: usize,
    j: usize,
    level: i64,
    order: usize,
) -> Result<AffinePairSeries> {
    let b = table.b[i][j];
    let qk = RatFunc::q_pow(level);
    let qmk = RatFunc::q_pow(-level);
    let expand = |r: &ZRat| {
        r.expand(order)
            .ok_or_else(|| Error::Invariant("pole at the origin".into()))
    };
    let g = expand(&g_rational(b))?;
    let fji = table.get(j, i).expand(order);
    let m = g
        .scale_arg(&qmk)
        .inv()?
        .mul(&fji.scale_arg(&qk))
        .mul(&fji.scale_arg(&qmk).inv()?);
    let big_g = m.scale_arg(&qmk).mul(&m.scale_arg(&qk).inv()?);
    let f_minus = table
        .get(i, j)
        .expand(order)
        .scale_arg(&RatFunc::q_pow(2 * level));
    Ok(AffinePairSeries {
        g,
        m,
        big_g,
        f_minus,
    })
}

/// Closed-form route: compose the rational functions, then expand once.
pub fn affine_pair_closed_form(
    table: &FTable,
    i: usize,
    j: usize,
    level: i64,
    order: usize,
) -> Result<AffinePairSeries> {
    let b = table.b[i][j];
    let qk = RatFunc::q_pow(level);
    let qmk = RatFunc::q_pow(-level);
    let g = g_rational(b);
    let fji = table.get(j, i).zrat();
    let m = g
        .scale_arg(&qmk)
        .inv()
        .mul(&fji.scale_arg(&qk))
        .mul(&fji.scale_arg(&qmk).inv());
    let big_g = m.scale_arg(&qmk).mul(&m.scale_arg(&qk).inv());
    let f_minus = table.get(i, j).zrat().scale_arg(&RatFunc::q_pow(2 * level));
    let expand = |r: &ZRat| {
        r.expand(order)
            .ok_or_else(|| Error::Invariant("pole at the origin".into()))
    };
    Ok(AffinePairSeries {
        g: expand(&g)?,
        m: expand(&m)?,
        big_g: expand(&big_g)?,
        f_minus: expand(&f_minus)?,
    })
}

/// All pairs, computed by the series route and cross-checked against the
/// closed form.
pub fn affine_series_pack(
    datum: &CartanDatum,
    n: &IntMatrix,
    level: i64,
    order: usize,
) -> Result<Vec<Vec<AffinePairSeries>>> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let table = FTable::new(datum, n);
    let l = datum.rank;
    let mut out = Vec::with_capacity(l);
    for i in 0..l {
        let mut row = Vec::with_capacity(l);
        for j in 0..l {
            let series = affine_pair_series(&table, i, j, level, order)?;
            let closed = affine_pair_closed_form(&table, i, j, level, order)?;
            if series != closed {
                return Err(Error::Invariant(format!(
                    "({},{}) series and closed-form routes disagree",
                    i + 1,
                    j + 1
                )));
            }
            row.push(series);
        }
        out.push(row);
    }
    Ok(out)
}

/// Checks the structural facts of one pack: units at the origin,
/// `g_ij(0) = q^{-b_ij}`, `F⁻_ij(0) = q_j^{n_ij}`, and at level 0
/// `M = g⁻¹`, `G = 1`.
pub fn check_affine_pack(datum: &CartanDatum, n: &IntMatrix, level: i64, order: usize) -> Verdict {
    let pack = match affine_series_pack(datum, n, level, order) {
        Ok(p) => p,
        Err(e) => return Verdict::fail(e.to_string()),
    };
    let l = datum.rank;
    for i in 0..l {
        for j in 0..l {
            let s = &pack[i][j];
            let tag = format!("({},{})", i + 1, j + 1);
            for (name, series) in [
                ("g", &s.g),
                ("M", &s.m),
                ("G", &s.big_g),
                ("F-", &s.f_minus),
            ] {
                if series.coeff(0).is_zero() {
                    return Verdict::fail(format!("{tag} {name} has zero constant term"));
                }
            }
            if s.g.coeff(0) != &RatFunc::q_pow(-datum.b[i][j]) {
                return Verdict::fail(format!("{tag} g(0) = {}", s.g.coeff(0)));
            }
            if s.f_minus.coeff(0) != &RatFunc::q_pow(datum.d[j] * n[i][j]) {
                return Verdict::fail(format!("{tag} F-(0) = {}", s.f_minus.coeff(0)));
            }
            if level == 0 {
                let ginv = match s.g.inv() {
                    Ok(x) => x,
                    Err(e) => return Verdict::fail(format!("{tag} {e}")),
                };
                if s.m != ginv || s.big_g != TruncSeries::one(s.big_g.var(), order) {
                    return Verdict::fail(format!("{tag} level-0 reduction fails"));
                }
            }
        }
    }
    Verdict::Pass
}

/// `[(u - y q^b) F_ji(y/u) - (q^b u - y) F_ij(u/y)]` with each structure
/// function expanded as a Taylor series in its own argument through
/// `order`, then truncated at total order `order` in that argument. The
/// pole cancellation leaves a finite Laurent polynomial in `u`, `y`.
pub fn two_point_bracket(table: &FTable, i: usize, j: usize, order: usize) -> MLPoly {
    let b = table.b[i][j];
    let side = |first: usize, second: usize, num: Var, den: Var, lead: (i64, i64)| -> MLPoly {
        // (lead.0 * num + lead.1 q^b den) * F(den/num) truncated at order
        let f = table.get(first, second).expand(order);
        let x = MLPoly::monomial(mono(&[(den, 1), (num, -1)]));
        let mut out = MLPoly::zero();
        let mut xp = MLPoly::one();
        let mut terms: Vec<MLPoly> = Vec::new();
        for k in 0..=order {
            let c = f.coeff(k);
            let p = c
                .as_poly()
                .expect("structure function coefficients are Laurent polynomials");
            terms.push(&MLPoly::from_laurent(p, Var::V) * &xp);
            xp = &xp * &x;
        }
        // prefactor num*(lead.0 + lead.1 q^b x); the x-part raises the order by one
        let a0 = MLPoly::from_int(lead.0);
        let a1 = &MLPoly::from_int(lead.1) * &MLPoly::q_pow(b);
        let numv = MLPoly::var(num);
        for (k, t) in terms.iter().enumerate() {
            out += &(&(&numv * &a0) * t);
            if k < order {
                out += &(&(&(&numv * &a1) * &x) * t);
            }
        }
        out
    };
    // (u - y q^b) F_ji(y/u) = u (1 - q^b y/u) F_ji(y/u)
    let left = side(j, i, Var::U, Var::Y, (1, -1));
    // (q^b u - y) F_ij(u/y) = y (q^b u/y - 1) F_ij(u/y) = -y (1 - q^b u/y) F_ij(u/y)
    let right = -&side(i, j, Var::Y, Var::U, (1, -1));
    &left - &right
}

/// Substitutes commuting Laurent polynomials `φ_i(u)` for the currents in
/// the quadratic relations: every bracket times `φ_i(u) φ_j(y)` must vanish.
pub fn quadratic_character_check(table: &FTable, phi: &[MLPoly], order: usize) -> Verdict {
    let l = table.rank();
    if phi.len() != l {
        return Verdict::fail(format!("expected {l} functions, got {}", phi.len()));
    }
    let in_y = |p: &MLPoly| -> MLPoly {
        let mut out = MLPoly::zero();
        for (e, c) in p.terms() {
            let mut e2 = *e;
            e2[Var::Y.index()] = e[Var::U.index()];
            e2[Var::U.index()] = 0;
            out.add_term(e2, c.clone());
        }
        out
    };
    for i in 0..l {
        for j in 0..l {
            let bracket = two_point_bracket(table, i, j, order);
            let value = &bracket * &(&phi[i] * &in_y(&phi[j]));
            if !value.is_zero() {
                return Verdict::fail(format!(
                    "({},{}) quadratic relation under the character: {}",
                    i + 1,
                    j + 1,
                    value.render()
                ));
            }
        }
    }
    Verdict::Pass
}

/// The Serre-type relations under any commuting substitution reduce to the
/// cleared identity, since `prod_s φ_i(z_s) φ_j(w)` is symmetric in the `z_s`
/// and factors out of `P_ij`.
pub fn serre_character_check(datum: &CartanDatum, table: &FTable) -> Verdict {
    let l = datum.rank;
    for i in 0..l {
        for j in 0..l {
            if i == j || datum.a[i][j] == 0 {
                continue;
            }
            match serre_series_identity(table, datum.d[i], i, j) {
                Ok(Verdict::Pass) => {}
                Ok(fail) => return fail,
                Err(e) => return Verdict::fail(e.to_string()),
            }
        }
    }
    Verdict::Pass
}

/// Quadratic relations for the given `φ` and the Serre-type relations.
pub fn generalized_character_check(
    datum: &CartanDatum,
    table: &FTable,
    phi: &[MLPoly],
    order: usize,
) -> Verdict {
    quadratic_character_check(table, phi, order).and(|| serre_character_check(datum, table))
}
