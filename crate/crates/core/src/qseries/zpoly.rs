//! Univariate Laurent polynomials and rational functions in a formal
//! variable `z`, with coefficients in `Q(v)`.

use std::fmt;

use crate::qnum::RatFunc;
use crate::qseries::{MLPoly, TruncSeries, Var};

/// `sum_k c_k z^{low + k}` with nonzero end coefficients (or empty).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    low: i32,
    coeffs: Vec<RatFunc>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::monomial(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn monomial(c: RatFunc, e: i32) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    /// `c_0 z^low + c_1 z^{low+1} + ...`.
    pub fn from_coeffs(low: i32, coeffs: Vec<RatFunc>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFunc::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> RatFunc {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            RatFunc::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e) + other.coeff(e))
            .collect();
        Self::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![RatFunc::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                coeffs[a + b] = &coeffs[a + b] + &(x * y);
            }
        }
        Self::from_coeffs(self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(a z)`.
    pub fn scale_arg(&self, a: &RatFunc) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * &a.pow(self.low as i64 + k as i64))
            .collect();
        Self::from_coeffs(self.low, coeffs)
    }

    /// `p(1/z)`.
    pub fn reflect(&self) -> Self {
        match self.max_exp() {
            None => Self::zero(),
            Some(high) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                Self::from_coeffs(-high, coeffs)
            }
        }
    }

    /// Exact quotient `self / d`, if `d` divides `self` in `Q(v)[z, 1/z]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut rem: Vec<RatFunc> = self.coeffs.clone();
        let dl = d.coeffs.len();
        if rem.len() < dl {
            return None;
        }
        let lead_inv = d.coeffs[dl - 1].inv();
        let mut quot = vec![RatFunc::zero(); rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dl - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (t, dc) in d.coeffs.iter().enumerate() {
                rem[k + t] = &rem[k + t] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.iter()
            .all(RatFunc::is_zero)
            .then(|| Self::from_coeffs(self.low - d.low, quot))
    }

    /// As an [`MLPoly`] in `v` and `var`, when every coefficient is a
    /// Laurent polynomial in `v`.
    pub fn to_mlpoly(&self, var: Var) -> Option<MLPoly> {
        let mut out = MLPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let p = c.as_poly()?;
            let term =
                &MLPoly::from_laurent(p, Var::V) * &MLPoly::var_pow(var, self.low + k as i32);
            out += &term;
        }
        Some(out)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let e = self.low + k as i32;
                match e {
                    0 => format!("({})", c.render()),
                    1 => format!("({})*z", c.render()),
                    _ => format!("({})*z^{e}", c.render()),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({})", self.render())
    }
}

/// `num / den` in `Q(v)(z)`, kept unreduced; equality is by cross-multiplication.
#[derive(Clone, Debug)]
pub struct ZRat {
    pub num: ZPoly,
    pub den: ZPoly,
}

impl ZRat {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        Self::new(p, ZPoly::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_arg(&self, a: &RatFunc) -> Self {
        Self::new(self.num.scale_arg(a), self.den.scale_arg(a))
    }

    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect())
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Whether the function is a constant (numerator proportional to denominator).
    pub fn is_constant(&self) -> bool {
        match (self.num.min_exp(), self.den.min_exp()) {
            (None, _) => true,
            (Some(a), Some(b)) => {
                a == b && self.num.scale(&self.den.coeff(b)) == self.den.scale(&self.num.coeff(a))
            }
            _ => false,
        }
    }

    /// Taylor expansion at `z = 0` through order `n`; `None` if there is a pole at 0.
    pub fn expand(&self, n: usize) -> Option<TruncSeries> {
        let dl = self.den.min_exp()?;
        let shift = match self.num.min_exp() {
            None => return Some(TruncSeries::zero(Var::Z1, n)),
            Some(nl) => nl - dl,
        };
        if shift < 0 {
            return None;
        }
        let series_of = |p: &ZPoly, low: i32, extra: usize| {
            let coeffs = (0..=n)
                .map(|k| {
                    if k < extra {
                        RatFunc::zero()
                    } else {
                        p.coeff(low + (k - extra) as i32)
                    }
                })
                .collect();
            TruncSeries::from_coeffs(Var::Z1, n, coeffs)
        };
        let num = series_of(&self.num, self.num.low, shift as usize);
        let den = series_of(&self.den, dl, 0);
        Some(num.mul(&den.inv().ok()?))
    }
}
