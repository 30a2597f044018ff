//! Laurent polynomials in the base variable `v`, with `q = v^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sparse Laurent polynomial `sum c_e v^e` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// `q^e = v^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Self::v_pow(2 * e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// A single term `c v^e` with `c != 0`; these are exactly the units of `Q[v, 1/v]`.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The bar involution `v -> 1/v`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute `v -> v^k` (any nonzero integer `k`).
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k != 0, "dilation by zero");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Dense ascending coefficients after stripping the lowest power of `v`.
    /// Returns the stripped exponent and the coefficients.
    pub(crate) fn to_dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            out[(e - lo) as usize] = c.clone();
        }
        (lo, out)
    }

    pub(crate) fn from_dense(shift: i64, coeffs: &[Rational]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (shift + k as i64, c.clone())),
        )
    }

    /// Renders in `q` when every exponent is even, otherwise in `v`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let in_q = self.terms.keys().all(|e| e % 2 == 0);
        let (var, div) = if in_q { ("q", 2) } else { ("v", 1) };
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let exp = e / div;
            let body = match exp {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{exp}"),
            };
            if body.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&body);
            } else {
                out.push_str(&format!("{mag}*{body}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render())
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Dense polynomial helpers over `Q`, ascending coefficient order.
pub(crate) mod dense {
    use super::Rational;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<Rational>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn div_rem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r: Vec<Rational> = num.to_vec();
        trim(&mut r);
        let mut d = den.to_vec();
        trim(&mut d);
        assert!(!d.is_empty(), "polynomial division by zero");
        if r.len() < d.len() {
            return (Vec::new(), r);
        }
        let lead = d.last().unwrap().clone();
        let mut quo = vec![Rational::zero(); r.len() - d.len() + 1];
        while r.len() >= d.len() && !r.is_empty() {
            let shift = r.len() - d.len();
            let factor = r.last().unwrap() / &lead;
            for (k, dc) in d.iter().enumerate() {
                r[shift + k] -= &factor * dc;
            }
            quo[shift] = factor;
            r.pop();
            trim(&mut r);
        }
        (quo, r)
    }

    pub fn monic(p: &[Rational]) -> Vec<Rational> {
        let lead = p.last().cloned().unwrap_or_else(Rational::one);
        p.iter().map(|c| c / &lead).collect()
    }

    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let (_, r) = div_rem(&x, &y);
            x = y;
            y = r;
        }
        if x.is_empty() {
            x
        } else {
            monic(&x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let q = LaurentPoly::q_pow(1);
        let qi = LaurentPoly::q_pow(-1);
        assert!((&q * &qi).is_one());
        let s = &q + &qi;
        assert_eq!(s.render(), "q^-1 + q");
        let d = &s - &s;
        assert!(d.is_zero());
    }

    #[test]
    fn render_switches_to_v() {
        let p = &LaurentPoly::v_pow(1) - &LaurentPoly::from_int(2);
        assert_eq!(p.render(), "-2 + v");
        let p = LaurentPoly::from_terms([(-4, rat(1)), (0, rat(2)), (4, rat(1))]);
        assert_eq!(p.render(), "q^-2 + 2 + q^2");
    }

    #[test]
    fn dense_gcd() {
        // (x-1)(x+2) and (x-1)(x+3)
        let a = vec![rat(-2), rat(1), rat(1)];
        let b = vec![rat(-3), rat(2), rat(1)];
        assert_eq!(dense::gcd(&a, &b), vec![rat(-1), rat(1)]);
    }
}
