//! Truncated power series in `T` over an exact coefficient ring.
//!
//! The truncation order travels with the value. Binary operations truncate
//! to the smaller order, so no result ever claims precision it was not
//! computed to.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::json::{array, field};
use crate::ring::Ring;

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Series `c_0 + c_1 T + … + c_N T^N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Result<Self> {
        if coeffs.is_empty() {
            return domain("a truncated series needs at least a constant term");
        }
        let first = &coeffs[0];
        if coeffs.iter().any(|c| !first.compatible(c)) {
            return domain("series coefficients from different rings");
        }
        Ok(Self { coeffs })
    }

    /// Pads (with zeros) or truncates `coeffs` to exactly `order + 1` terms.
    pub fn from_prefix(mut coeffs: Vec<R>, like: &R, order: usize) -> Self {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(like.zero_like());
        }
        Self { coeffs }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coeffs = vec![zero; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn one(like: &R, order: usize) -> Self {
        Self::constant(like.one_like(), order)
    }

    /// `1 + T`, truncated at `order`.
    pub fn one_plus_t(like: &R, order: usize) -> Self {
        let mut s = Self::one(like, order);
        if order >= 1 {
            s.coeffs[1] = like.one_like();
        }
        s
    }

    /// `1/(1 - T)` to `order`: every coefficient is one.
    pub fn geometric(like: &R, order: usize) -> Self {
        Self {
            coeffs: vec![like.one_like(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, c: R) {
        self.coeffs[k] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !self.coeffs[0].compatible(&other.coeffs[0]) {
            return domain("series over different coefficient rings");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=n).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        Ok(Self {
            coeffs: (0..=n).map(|k| self.coeffs[k].sub(&other.coeffs[k])).collect(),
        })
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .fold(self.coeffs[0].zero_like(), |acc, i| {
                        acc.add(&self.coeffs[i].mul(&other.coeffs[k - i]))
                    })
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplicative inverse; the constant term must be exactly one.
    pub fn inv(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return domain(format!(
                "series inversion needs constant term 1, found {}",
                self.coeffs[0]
            ));
        }
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(self.coeffs[0].one_like());
        for k in 1..=n {
            // b_k = -Σ_{i=1}^{k} a_i b_{k-i}
            let s = (1..=k)
                .filter(|&i| !self.coeffs[i].is_zero())
                .fold(self.coeffs[0].zero_like(), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&out[k - i]))
                });
            out.push(s.neg());
        }
        Ok(Self { coeffs: out })
    }

    /// `T ↦ cT`: coefficient `c_k` becomes `c^k c_k`.
    pub fn scale_t(&self, c: &R) -> Self {
        let mut power = c.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(c);
            }
            coeffs.push(a.mul(&power));
        }
        Self { coeffs }
    }

    /// `T ↦ -T`.
    pub fn alternate(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// `T ↦ T^k`, keeping the order.
    pub fn substitute_tk(&self, k: usize) -> Result<Self> {
        self.substitute_tk_to(k, self.order())
    }

    /// `T ↦ T^k` reported to order `order`; needs `self.order() ≥ order / k`.
    pub fn substitute_tk_to(&self, k: usize, order: usize) -> Result<Self> {
        if k == 0 {
            return domain("T ↦ T^k needs k ≥ 1");
        }
        if self.order() < order / k {
            return domain(format!(
                "series of order {} cannot produce T ↦ T^{k} to order {order}",
                self.order()
            ));
        }
        let zero = self.coeffs[0].zero_like();
        let coeffs = (0..=order)
            .map(|i| {
                if i % k == 0 {
                    self.coeffs[i / k].clone()
                } else {
                    zero.clone()
                }
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<TruncatedSeries<S>> {
        Ok(TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// First index where the two series differ, comparing up to the smaller order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(Ring::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, parse: impl Fn(&Value) -> Result<R>) -> Result<Self> {
        let order = field(v, "order")?
            .as_u64()
            .ok_or_else(|| crate::Error::Domain("order must be a nonnegative integer".into()))?;
        let coeffs = array(field(v, "coeffs")?, "coeffs")?
            .iter()
            .map(parse)
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() as u64 != order + 1 {
            return domain(format!(
                "series of order {order} needs {} coefficients, found {}",
                order + 1,
                coeffs.len()
            ));
        }
        Self::new(coeffs)
    }
}

fn atomic(s: &str) -> bool {
    !s.contains([' ', '/'])
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    /// `c0 + (c1)*T + (c2)*T^2 + ...`, skipping zero coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            let text = c.to_string();
            let body = if atomic(&text) && !text.starts_with('-') {
                text
            } else {
                format!("({text})")
            };
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    let t = if k == 1 { "T".to_string() } else { format!("T^{k}") };
                    if c.is_one() {
                        write!(f, "{t}")?;
                    } else {
                        write!(f, "{body}*{t}")?;
                    }
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[order {}]({self})", self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{IntLaurent, MultiPoly};
    use crate::class::MotivicClass;

    fn ints(cs: &[i64]) -> TruncatedSeries<IntLaurent> {
        TruncatedSeries::new(cs.iter().map(|&c| IntLaurent::constant(c)).collect()).unwrap()
    }

    #[test]
    fn products() {
        let a = ints(&[1, 1, 0]);
        let b = ints(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), ints(&[1, 0, -1]));
        let g = ints(&[1, 1, 1, 1]);
        assert_eq!(g.mul(&ints(&[1, -1, 0, 0])).unwrap(), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn zeta_ratio_prefix() {
        // (1 + LT + L²T²)(1 - LT²) = 1 + LT + (L² - L)T²
        let l = MotivicClass::l();
        let a = TruncatedSeries::new(vec![MotivicClass::one(), l.clone(), l.mul(&l)]).unwrap();
        let b = TruncatedSeries::new(vec![MotivicClass::one(), MotivicClass::zero(), l.neg()]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(2), &l.mul(&l).sub(&l));
    }

    #[test]
    fn order_is_the_minimum() {
        let a = ints(&[1, 2, 3, 4]);
        let b = ints(&[1, 1]);
        assert_eq!(a.mul(&b).unwrap().order(), 1);
    }

    #[test]
    fn inversion() {
        assert_eq!(ints(&[1, -1, 0, 0]).inv().unwrap(), ints(&[1, 1, 1, 1]));
        let uv = MultiPoly::uv_monomial(1, 1);
        let one = uv.one_like();
        let s = TruncatedSeries::new(vec![one.clone(), uv.neg(), uv.zero_like()]).unwrap();
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeffs(), &[one, uv.clone(), uv.mul(&uv)]);
        assert!(ints(&[2, 1]).inv().is_err());
    }

    #[test]
    fn scale_and_substitute() {
        let g = TruncatedSeries::geometric(&MotivicClass::one(), 2);
        let l = MotivicClass::l();
        let s = g.scale_t(&l);
        assert_eq!(s.coeffs(), &[MotivicClass::one(), l.clone(), l.mul(&l)]);
        assert_eq!(g.scale_t(&MotivicClass::one()), g);
        let zeroed = g.scale_t(&MotivicClass::zero());
        assert_eq!(zeroed, TruncatedSeries::constant(MotivicClass::one(), 2));

        let one_plus_t = ints(&[1, 1, 0, 0, 0]);
        assert_eq!(one_plus_t.substitute_tk(2).unwrap(), ints(&[1, 0, 1, 0, 0]));
        assert_eq!(one_plus_t.substitute_tk(1).unwrap(), one_plus_t);
        assert!(one_plus_t.substitute_tk(0).is_err());
    }

    #[test]
    fn ring_mismatch_is_a_domain_error() {
        let a = TruncatedSeries::one(&MultiPoly::one(MultiPoly::hd_vars()), 2);
        let b = TruncatedSeries::one(&MultiPoly::one(MultiPoly::var_names(&["x"])), 2);
        assert!(matches!(a.mul(&b), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn rendering() {
        let b = MotivicClass::bgl(1).unwrap();
        let s = TruncatedSeries::new(vec![MotivicClass::one(), b, MotivicClass::zero(), MotivicClass::l()]).unwrap();
        assert_eq!(s.to_string(), "1 + (1 / (L - 1))*T + L*T^3");
    }
}
