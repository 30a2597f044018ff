//! Sparse multivariate Laurent polynomials over `Q`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::qnum::{LaurentPoly, Rational};

/// Variables available to [`MLPoly`]. `V` is the base variable (`q = v^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    V,
    T,
    U,
    Y,
    W,
    Z1,
    Z2,
    Z3,
    Z4,
}

pub const NVARS: usize = 9;

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::V,
        Var::T,
        Var::U,
        Var::Y,
        Var::W,
        Var::Z1,
        Var::Z2,
        Var::Z3,
        Var::Z4,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::V => "v",
            Var::T => "t",
            Var::U => "u",
            Var::Y => "y",
            Var::W => "w",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Z3 => "z3",
            Var::Z4 => "z4",
        }
    }

    /// `z_1 .. z_4` by zero-based position.
    pub fn z(p: usize) -> Var {
        [Var::Z1, Var::Z2, Var::Z3, Var::Z4][p]
    }
}

pub type Exps = [i32; NVARS];

/// Monomial exponent vector helper: `mono(&[(Var::Z1, 1), (Var::W, -1)])`.
pub fn mono(parts: &[(Var, i32)]) -> Exps {
    let mut e = [0; NVARS];
    for (v, k) in parts {
        e[v.index()] += k;
    }
    e
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut out = *a;
    for k in 0..NVARS {
        out[k] += b[k];
    }
    out
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct MLPoly {
    terms: HashMap<Exps, Rational>,
}

impl MLPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, [0; NVARS])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(crate::qnum::rat(n))
    }

    pub fn term(c: Rational, exps: Exps) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn monomial(exps: Exps) -> Self {
        Self::term(Rational::one(), exps)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(mono(&[(v, 1)]))
    }

    pub fn var_pow(v: Var, k: i32) -> Self {
        Self::monomial(mono(&[(v, k)]))
    }

    /// `q^e` in the base variable.
    pub fn q_pow(e: i64) -> Self {
        Self::var_pow(Var::V, (2 * e) as i32)
    }

    /// Embed a Laurent polynomial, reading its variable as `var`.
    pub fn from_laurent(p: &LaurentPoly, var: Var) -> Self {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            out.add_term(mono(&[(var, e as i32)]), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, exps: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Exps) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|e| e[v.index()] != 0))
            .collect()
    }

    /// Group by the exponent of `var`; coefficients keep every other variable.
    pub fn coefficients_in(&self, var: Var) -> BTreeMap<i32, MLPoly> {
        let mut out: BTreeMap<i32, MLPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[var.index()];
            let mut rest = *e;
            rest[var.index()] = 0;
            out.entry(k).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Read back as a Laurent polynomial in the base variable, if no other
    /// variable occurs.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if e.iter()
                .enumerate()
                .any(|(k, x)| k != Var::V.index() && *x != 0)
            {
                return None;
            }
            out.add_term(e[Var::V.index()] as i64, c.clone());
        }
        Some(out)
    }

    /// Deterministic rendering: graded order by total degree, then
    /// lexicographic in the alphabetical variable order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut order: Vec<Var> = Var::ALL.to_vec();
        order.sort_by_key(|v| v.name());
        let key = |e: &Exps| -> (i64, Vec<i32>) {
            let deg: i64 = e.iter().map(|x| *x as i64).sum();
            (deg, order.iter().map(|v| e[v.index()]).collect())
        };
        let mut items: Vec<(&Exps, &Rational)> = self.terms.iter().collect();
        items.sort_by_key(|a| key(a.0));
        let mut out = String::new();
        for (idx, (e, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = order
                .iter()
                .filter(|v| e[v.index()] != 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{}", v.name(), k),
                })
                .collect();
            let mag = c.abs();
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MLPoly({})", self.render())
    }
}

impl AddAssign<&MLPoly> for MLPoly {
    fn add_assign(&mut self, rhs: &MLPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add for &MLPoly {
    type Output = MLPoly;
    fn add(self, rhs: &MLPoly) -> MLPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &MLPoly {
    type Output = MLPoly;
    fn neg(self) -> MLPoly {
        MLPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Sub for &MLPoly {
    type Output = MLPoly;
    fn sub(self, rhs: &MLPoly) -> MLPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &MLPoly {
    type Output = MLPoly;
    fn mul(self, rhs: &MLPoly) -> MLPoly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut acc: HashMap<Exps, Rational> =
            HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                let e = add_exps(e1, e2);
                let prod = c1 * c2;
                match acc.get_mut(&e) {
                    Some(x) => *x += prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MLPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MLPoly {
            type Output = MLPoly;
            fn $m(self, rhs: MLPoly) -> MLPoly { (&self).$m(&rhs) }
        }
        impl $tr<&MLPoly> for MLPoly {
            type Output = MLPoly;
            fn $m(self, rhs: &MLPoly) -> MLPoly { (&self).$m(rhs) }
        }
        impl $tr<MLPoly> for &MLPoly {
            type Output = MLPoly;
            fn $m(self, rhs: MLPoly) -> MLPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for MLPoly {
    type Output = MLPoly;
    fn neg(self) -> MLPoly {
        -&self
    }
}
