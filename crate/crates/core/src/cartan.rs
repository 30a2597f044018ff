//! Finite-type Cartan data.
//!
//! Node numbering follows Bourbaki. With `b_ij = d_i a_ij` the pairing of
//! simple roots, `a_ij = 2(α_i, α_j)/(α_i, α_i)` and `d_i = (α_i, α_i)/2`:
//!
//! | type | diagram (node: d)                    | non-simply-laced entries        |
//! |------|--------------------------------------|---------------------------------|
//! | A_l  | 1 - 2 - ... - l, all d = 1           |                                 |
//! | B_l  | 1 - ... - (l-1) => l, d = (2,..,2,1) | a_{l-1,l} = -1, a_{l,l-1} = -2  |
//! | C_l  | 1 - ... - (l-1) <= l, d = (1,..,1,2) | a_{l-1,l} = -2, a_{l,l-1} = -1  |
//! | D_l  | chain 1..l-2, l-2 joined to l-1, l   |                                 |
//! | E_l  | chain 1-3-4-5-..-l, 2 joined to 4    |                                 |
//! | F_4  | 1 - 2 => 3 - 4, d = (2,2,1,1)        | a_23 = -1, a_32 = -2            |
//! | G_2  | 1 <= 2, d = (1,3)                    | a_12 = -3, a_21 = -1            |
//!
//! `C_2` is accepted and canonicalized to `B_2`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Order of any Coxeter element.
    pub fn coxeter_number(self, rank: usize) -> usize {
        match self {
            Family::A => rank + 1,
            Family::B | Family::C => 2 * rank,
            Family::D => 2 * rank - 2,
            Family::E => match rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            Family::F => 12,
            Family::G => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    pub family: Family,
    pub rank: usize,
    pub a: IntMatrix,
    pub d: Vec<i64>,
    pub b: IntMatrix,
}

impl CartanDatum {
    /// Label used in reports, e.g. `"G2"`.
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn coxeter_number(&self) -> usize {
        self.family.coxeter_number(self.rank)
    }

    /// Lattice exponent vector of `K_i = prod_j L_j^{a_ji}`.
    pub fn kappa(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| self.a[j][i]).collect()
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn chain(rank: usize) -> IntMatrix {
    let mut a = vec![vec![0; rank]; rank];
    for i in 0..rank {
        a[i][i] = 2;
        if i + 1 < rank {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    a
}

fn link(a: &mut IntMatrix, i: usize, j: usize) {
    a[i][j] = -1;
    a[j][i] = -1;
}

fn unlink(a: &mut IntMatrix, i: usize, j: usize) {
    a[i][j] = 0;
    a[j][i] = 0;
}

/// Cartan matrix of an indecomposable finite type, Bourbaki numbering.
pub fn make_cartan(family: Family, rank: usize) -> Result<CartanDatum> {
    if !family.is_valid_rank(rank) {
        return Err(Error::InvalidCartanType {
            family: family.letter(),
            rank,
            reason: match family {
                Family::A => "rank must be at least 1".into(),
                Family::B | Family::C => "rank must be at least 2".into(),
                Family::D => "rank must be at least 3".into(),
                Family::E => "rank must be 6, 7 or 8".into(),
                Family::F => "rank must be 4".into(),
                Family::G => "rank must be 2".into(),
            },
        });
    }
    let family = if family == Family::C && rank == 2 {
        Family::B
    } else {
        family
    };
    let l = rank;
    let mut a = chain(l);
    match family {
        Family::A => {}
        Family::B => a[l - 1][l - 2] = -2,
        Family::C => a[l - 2][l - 1] = -2,
        Family::D => {
            // l-2 is the branch node; l-1 and l hang off it
            unlink(&mut a, l - 2, l - 1);
            link(&mut a, l - 3, l - 1);
        }
        Family::E => {
            a = vec![vec![0; l]; l];
            for i in 0..l {
                a[i][i] = 2;
            }
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 2..l - 1 {
                link(&mut a, i, i + 1);
            }
        }
        Family::F => a[2][1] = -2,
        Family::G => a[0][1] = -3,
    }
    let d = symmetrize(&a)?;
    let b = (0..l)
        .map(|i| (0..l).map(|j| d[i] * a[i][j]).collect())
        .collect();
    let datum = CartanDatum {
        family,
        rank,
        a,
        d,
        b,
    };
    let violations = validate(&datum);
    if !violations.is_empty() {
        return Err(Error::Invariant(format!(
            "{} fails validation: {}",
            datum.label(),
            violations.join("; ")
        )));
    }
    Ok(datum)
}

/// Coprime positive `d` with `d_i a_ij = d_j a_ji`.
///
/// Propagates ratios along the graph of nonzero off-diagonal entries; every
/// constraint (including those closing cycles) is re-checked at the end.
pub fn symmetrize(a: &IntMatrix) -> Result<Vec<i64>> {
    let l = a.len();
    if l == 0 || a.iter().any(|row| row.len() != l) {
        return Err(Error::NotSymmetrizable(
            "matrix must be square and nonempty".into(),
        ));
    }
    // d_i as a reduced fraction num/den
    let mut d: Vec<Option<(i64, i64)>> = vec![None; l];
    for start in 0..l {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..l {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(Error::NotSymmetrizable(format!(
                        "a[{i}][{j}] = {} but a[{j}][{i}] = 0",
                        a[i][j]
                    )));
                }
                // d_j = d_i * a_ij / a_ji
                let num = ni * a[i][j];
                let den = di * a[j][i];
                if num * den <= 0 {
                    return Err(Error::NotSymmetrizable(format!(
                        "entries a[{i}][{j}], a[{j}][{i}] force a non-positive ratio"
                    )));
                }
                let g = num.gcd(&den);
                let cand = ((num / g).abs(), (den / g).abs());
                match d[j] {
                    None => {
                        d[j] = Some(cand);
                        stack.push(j);
                    }
                    Some(existing) if existing != cand => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratio around node {j}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let fr: Vec<(i64, i64)> = d.into_iter().map(Option::unwrap).collect();
    let lcm = fr.iter().fold(1i64, |acc, (_, den)| acc.lcm(den));
    let ints: Vec<i64> = fr.iter().map(|(n, den)| n * (lcm / den)).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    let out: Vec<i64> = ints.iter().map(|x| x / g).collect();
    for i in 0..l {
        for j in 0..l {
            if out[i] * a[i][j] != out[j] * a[j][i] {
                return Err(Error::NotSymmetrizable(format!(
                    "no solution satisfies d_{i} a_{i}{j} = d_{j} a_{j}{i}"
                )));
            }
        }
    }
    Ok(out)
}

/// Exact integer determinant (Bareiss).
pub fn det(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|x| *x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Returns the list of violated invariants; empty means the datum is valid.
pub fn validate(datum: &CartanDatum) -> Vec<String> {
    let mut out = Vec::new();
    let l = datum.rank;
    let (a, d, b) = (&datum.a, &datum.d, &datum.b);
    if a.len() != l || a.iter().any(|r| r.len() != l) {
        out.push("a is not rank x rank".into());
        return out;
    }
    if d.len() != l || b.len() != l || b.iter().any(|r| r.len() != l) {
        out.push("d or b has the wrong shape".into());
        return out;
    }
    if (0..l).any(|i| a[i][i] != 2) {
        out.push("a_ii = 2".into());
    }
    if (0..l).any(|i| (0..l).any(|j| i != j && a[i][j] > 0)) {
        out.push("a_ij <= 0 for i != j".into());
    }
    if (0..l).any(|i| (0..l).any(|j| (a[i][j] == 0) != (a[j][i] == 0))) {
        out.push("a_ij = 0 <=> a_ji = 0".into());
    }
    if (0..l).any(|i| (0..l).any(|j| b[i][j] != b[j][i])) {
        out.push("b symmetric".into());
    }
    if (0..l).any(|i| (0..l).any(|j| b[i][j] != d[i] * a[i][j])) {
        out.push("b = diag(d) a".into());
    }
    if d.iter().any(|x| *x <= 0) {
        out.push("d positive".into());
    }
    if d.iter().fold(0i64, |acc, x| acc.gcd(x)) != 1 {
        out.push("gcd(d) = 1".into());
    }
    if det(a) == 0 {
        out.push("det(a) != 0".into());
    }
    out
}

/// Every supported `(family, rank)` with `rank <= max_rank`.
pub fn finite_types(max_rank: usize) -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for family in [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ] {
        for rank in 1..=max_rank {
            if !family.is_valid_rank(rank) || (family == Family::C && rank == 2) {
                continue;
            }
            out.push((family, rank));
        }
    }
    out
}
