//! Truncated power series with coefficients in `Q(v)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::qnum::{rat, RatFunc};
use crate::qseries::Var;

/// `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    var: Var,
    coeffs: Vec<RatFunc>,
}

impl TruncSeries {
    pub fn zero(var: Var, order: usize) -> Self {
        Self {
            var,
            coeffs: vec![RatFunc::zero(); order + 1],
        }
    }

    pub fn constant(var: Var, order: usize, c: RatFunc) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, order, RatFunc::one())
    }

    /// Series from explicit coefficients; missing ones are zero, extra ones dropped.
    pub fn from_coeffs(var: Var, order: usize, coeffs: Vec<RatFunc>) -> Self {
        let mut c = coeffs;
        c.resize(order + 1, RatFunc::zero());
        Self { var, coeffs: c }
    }

    /// `sum_n (a x)^n`.
    pub fn geometric(var: Var, order: usize, a: &RatFunc) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = RatFunc::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p = &p * a;
        }
        Self { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &RatFunc {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self {
            var: self.var,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self {
            var: self.var,
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        Self {
            var: self.var,
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        for (a, x) in self.coeffs.iter().enumerate().take(n + 1) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(n + 1 - a) {
                if !y.is_zero() {
                    coeffs[a + b] = &coeffs[a + b] + &(x * y);
                }
            }
        }
        Self {
            var: self.var,
            coeffs,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self {
            var: self.var,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `f(a x)`.
    pub fn scale_arg(&self, a: &RatFunc) -> Self {
        let mut p = RatFunc::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c * &p);
            p = &p * a;
        }
        Self {
            var: self.var,
            coeffs,
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inv(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::InvalidArgument(
                "series with zero constant term is not invertible".into(),
            ));
        }
        let inv0 = c0.inv();
        let n = self.order();
        let mut out: Vec<RatFunc> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = RatFunc::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-(&acc * &inv0));
        }
        Ok(Self {
            var: self.var,
            coeffs: out,
        })
    }

    /// `exp f` for `f(0) = 0`, from `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut g = vec![RatFunc::one()];
        for m in 1..=n {
            let mut acc = RatFunc::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &g[m - k]).scale(&rat(k as i64));
                }
            }
            g.push(acc.scale(&crate::qnum::ratio(1, m as i64)));
        }
        Ok(Self {
            var: self.var,
            coeffs: g,
        })
    }

    /// `log g` for `g(0) = 1`, from `n f_n = n g_n - sum_{k<n} k f_k g_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument(
                "log needs a series with constant term 1".into(),
            ));
        }
        let n = self.order();
        let mut f = vec![RatFunc::zero()];
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&rat(m as i64));
            for k in 1..m {
                if !f[k].is_zero() {
                    acc = &acc - &(&f[k] * &self.coeffs[m - k]).scale(&rat(k as i64));
                }
            }
            f.push(acc.scale(&crate::qnum::ratio(1, m as i64)));
        }
        Ok(Self {
            var: self.var,
            coeffs: f,
        })
    }

    pub fn render(&self) -> String {
        let x = self.var.name();
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = c.render();
            parts.push(match k {
                0 => body,
                1 => format!("({body})*{x}"),
                _ => format!("({body})*{x}^{k}"),
            });
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        format!("{} + O({x}^{})", parts.join(" + "), self.order() + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(e: i64) -> RatFunc {
        RatFunc::q_pow(e)
    }

    #[test]
    fn geometric_inverse() {
        let g = TruncSeries::geometric(Var::Z1, 8, &q(1));
        let one_minus = TruncSeries::from_coeffs(Var::Z1, 8, vec![RatFunc::one(), -q(1)]);
        assert_eq!(g.inv().unwrap(), one_minus);
        assert_eq!(g.mul(&one_minus), TruncSeries::one(Var::Z1, 8));
    }

    #[test]
    fn log_of_geometric() {
        // log 1/(1 - a x) = sum a^n x^n / n
        let g = TruncSeries::geometric(Var::Z1, 6, &q(2));
        let l = g.log().unwrap();
        for n in 1..=6 {
            let expected = q(2 * n as i64).scale(&crate::qnum::ratio(1, n as i64));
            assert_eq!(l.coeff(n), &expected);
        }
    }

    #[test]
    fn order_of_product_is_min() {
        let a = TruncSeries::one(Var::Z1, 3);
        let b = TruncSeries::one(Var::Z1, 7);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(b.add(&a).order(), 3);
    }

    #[test]
    fn zero_constant_not_invertible() {
        let s = TruncSeries::zero(Var::Z1, 2);
        assert!(s.inv().is_err());
        assert!(TruncSeries::one(Var::Z1, 2).exp().is_err());
        assert!(s.log().is_err());
    }

    fn arb_series() -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec((-3i64..=3, -4i64..=4), 1..=6).prop_map(|cs| {
            let mut coeffs = vec![RatFunc::zero()];
            for (c, e) in cs {
                coeffs.push(RatFunc::from_int(c).shift(e) + RatFunc::q_pow(e));
            }
            TruncSeries::from_coeffs(Var::Z1, 7, coeffs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn log_exp_round_trip(f in arb_series()) {
            let g = f.exp().unwrap();
            prop_assert!(g.coeff(0).is_one());
            prop_assert_eq!(g.log().unwrap(), f);
        }

        #[test]
        fn inverse_round_trip(f in arb_series()) {
            let g = f.add(&TruncSeries::one(Var::Z1, 7));
            let prod = g.mul(&g.inv().unwrap());
            prop_assert_eq!(prod, TruncSeries::one(Var::Z1, 7));
        }
    }
}
