//! The structure functions `F_ij(z)` of the affine e-relations and the
//! constraints they must satisfy.

use crate::cartan::{CartanDatum, IntMatrix};
use crate::error::{Error, Result};
use crate::qnum::RatFunc;
use crate::qseries::zpoly::{ZPoly, ZRat};
use crate::qseries::{MLPoly, TruncSeries, Var};
use crate::verdict::Verdict;

/// `F(z) = (q^{c0} - z q^{c1}) / (1 - z q^{pole})`, or the constant `q^{c0}`
/// when there is no pole. All exponents are powers of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FEntry {
    pub const_exp: i64,
    pub slope_exp: i64,
    pub pole: Option<i64>,
}

impl FEntry {
    pub fn constant(&self) -> RatFunc {
        RatFunc::q_pow(self.const_exp)
    }

    pub fn numerator(&self) -> ZPoly {
        match self.pole {
            Some(_) => ZPoly::from_coeffs(
                0,
                vec![
                    RatFunc::q_pow(self.const_exp),
                    -RatFunc::q_pow(self.slope_exp),
                ],
            ),
            None => ZPoly::constant(RatFunc::q_pow(self.const_exp)),
        }
    }

    pub fn denominator(&self) -> ZPoly {
        match self.pole {
            Some(b) => ZPoly::from_coeffs(0, vec![RatFunc::one(), -RatFunc::q_pow(b)]),
            None => ZPoly::one(),
        }
    }

    pub fn zrat(&self) -> ZRat {
        ZRat::new(self.numerator(), self.denominator())
    }

    /// Numerator evaluated at a monomial argument `x`.
    pub fn numerator_at(&self, x: &MLPoly) -> MLPoly {
        let c = MLPoly::q_pow(self.const_exp);
        match self.pole {
            Some(_) => &c - &(&MLPoly::q_pow(self.slope_exp) * x),
            None => c,
        }
    }

    /// Denominator evaluated at `x`, if there is one.
    pub fn denominator_at(&self, x: &MLPoly) -> Option<MLPoly> {
        self.pole.map(|b| &MLPoly::one() - &(&MLPoly::q_pow(b) * x))
    }

    pub fn is_constant(&self) -> bool {
        self.zrat().is_constant()
    }

    pub fn expand(&self, order: usize) -> TruncSeries {
        self.zrat()
            .expand(order)
            .expect("F has no pole at the origin")
    }
}

/// All `F_ij` for one datum and one integer matrix `n`.
#[derive(Debug, Clone)]
pub struct FTable {
    pub b: IntMatrix,
    pub a: IntMatrix,
    entries: Vec<Vec<FEntry>>,
}

impl FTable {
    pub fn new(datum: &CartanDatum, n: &IntMatrix) -> Self {
        let l = datum.rank;
        let entries = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| FEntry {
                        const_exp: datum.d[j] * n[i][j],
                        slope_exp: datum.d[i] * n[j][i],
                        pole: (datum.a[i][j] != 0).then_some(datum.b[i][j]),
                    })
                    .collect()
            })
            .collect();
        Self {
            b: datum.b.clone(),
            a: datum.a.clone(),
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &FEntry {
        &self.entries[i][j]
    }

    /// Replace one entry; used to build deliberately inconsistent tables.
    pub fn set(&mut self, i: usize, j: usize, entry: FEntry) {
        self.entries[i][j] = entry;
    }
}

/// `F_ij` as a numerator/denominator pair of polynomials in `v` and `z = z1`.
pub fn build_f(datum: &CartanDatum, n: &IntMatrix, i: usize, j: usize) -> (MLPoly, MLPoly) {
    let e = *FTable::new(datum, n).get(i, j);
    let z = MLPoly::var(Var::Z1);
    let den = e.denominator_at(&z).unwrap_or_else(MLPoly::one);
    (e.numerator_at(&z), den)
}

fn z_linear(c0: RatFunc, c1: RatFunc) -> ZPoly {
    ZPoly::from_coeffs(0, vec![c0, c1])
}

/// One `(i, j)` instance of the two-point constraint.
pub fn check_fg_pair(table: &FTable, i: usize, j: usize) -> Verdict {
    let fij = table.get(i, j).zrat();
    let fji_reflected = table.get(j, i).zrat().reflect();
    if table.a[i][j] == 0 {
        return Verdict::check(fji_reflected.equals(&fij), || {
            format!(
                "F_{0}{1}(1/z) != F_{1}{0}(z): {2:?} vs {3:?}",
                j + 1,
                i + 1,
                fji_reflected,
                fij
            )
        });
    }
    let qb = RatFunc::q_pow(table.b[i][j]);
    // (z - q^b) F_ji(1/z) and (q^b z - 1) F_ij(z)
    let lhs = ZRat::new(
        z_linear(-qb.clone(), RatFunc::one()).mul(&fji_reflected.num),
        fji_reflected.den.clone(),
    );
    let rhs = ZRat::new(z_linear(-RatFunc::one(), qb).mul(&fij.num), fij.den.clone());
    if !lhs.equals(&rhs) {
        let residual = lhs.num.mul(&rhs.den).sub(&rhs.num.mul(&lhs.den));
        return Verdict::fail(format!(
            "({},{}) two-point residual: {}",
            i + 1,
            j + 1,
            residual.render()
        ));
    }
    for (side, frac) in [("left", &lhs), ("right", &rhs)] {
        let ok = frac
            .num
            .exact_div(&frac.den)
            .is_some_and(|p| p.min_exp().unwrap_or(0) >= 0 && p.max_exp().unwrap_or(0) <= 1);
        if !ok {
            return Verdict::fail(format!(
                "({},{}) {side} side is not a polynomial of degree <= 1",
                i + 1,
                j + 1
            ));
        }
    }
    Verdict::Pass
}

pub fn check_fg_table(table: &FTable) -> Verdict {
    let l = table.rank();
    Verdict::all(
        (0..l)
            .flat_map(|i| (0..l).map(move |j| (i, j)))
            .map(|(i, j)| check_fg_pair(table, i, j)),
    )
}

pub fn check_fg_constraints(datum: &CartanDatum, n: &IntMatrix) -> Verdict {
    check_fg_table(&FTable::new(datum, n))
}

/// Taylor solution of the two-point constraint from the constant terms
/// `F_ij(0) = q_j^{n_ij}` alone: the ansatz
/// `F_ij(z) = c0 + c z / (1 - z q^b)` forces `c = q^b F_ij(0) - F_ji(0)`.
pub fn taylor_solve_f(
    datum: &CartanDatum,
    n: &IntMatrix,
    i: usize,
    j: usize,
    order: usize,
) -> Result<TruncSeries> {
    if datum.a[i][j] == 0 {
        return Err(Error::InvalidArgument(format!(
            "Taylor ansatz needs a_ij != 0, got ({},{})",
            i + 1,
            j + 1
        )));
    }
    let b = datum.b[i][j];
    let qb = RatFunc::q_pow(b);
    let c0_ij = RatFunc::q_pow(datum.d[j] * n[i][j]);
    let c0_ji = RatFunc::q_pow(datum.d[i] * n[j][i]);
    let c_ij = &(&qb * &c0_ij) - &c0_ji;
    let c_ji = &(&qb * &c0_ji) - &c0_ij;

    // both ansatz functions must satisfy the constraint before we trust them
    let ansatz = |c0: &RatFunc, c: &RatFunc| {
        let den = z_linear(RatFunc::one(), -qb.clone());
        let num = den.scale(c0).add(&ZPoly::monomial(c.clone(), 1));
        (num, den)
    };
    let (nij, dij) = ansatz(&c0_ij, &c_ij);
    let (nji, dji) = ansatz(&c0_ji, &c_ji);
    let check = {
        let fji_reflected = ZRat::new(nji, dji).reflect();
        let lhs = ZRat::new(
            z_linear(-qb.clone(), RatFunc::one()).mul(&fji_reflected.num),
            fji_reflected.den,
        );
        let rhs = ZRat::new(z_linear(-RatFunc::one(), qb.clone()).mul(&nij), dij);
        lhs.equals(&rhs)
    };
    if !check {
        return Err(Error::Invariant(format!(
            "inconsistent constant-term data for ({},{})",
            i + 1,
            j + 1
        )));
    }
    let mut coeffs = vec![c0_ij];
    let mut p = c_ij;
    for _ in 1..=order {
        coeffs.push(p.clone());
        p = &p * &qb;
    }
    Ok(TruncSeries::from_coeffs(Var::Z1, order, coeffs))
}

/// For each unordered pair with `a_ij != 0`, at least one of `F_ij`, `F_ji`
/// is constant.
pub fn check_dichotomy(table: &FTable) -> Verdict {
    let l = table.rank();
    for i in 0..l {
        for j in (i + 1)..l {
            if table.a[i][j] == 0 {
                continue;
            }
            if !table.get(i, j).is_constant() && !table.get(j, i).is_constant() {
                return Verdict::fail(format!(
                    "neither F_{0}{1} nor F_{1}{0} is constant",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    Verdict::Pass
}
