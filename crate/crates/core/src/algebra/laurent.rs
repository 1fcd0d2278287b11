//! Integer Laurent polynomials in the Lefschetz class `L`.
//!
//! Storage is dense between the lowest and highest nonzero degree. The zero
//! polynomial has no stored coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::multipoly::MultiPoly;
use super::rational::ExactRational;
use crate::error::{domain, Result};
use crate::json::{array, bigint_from_json, bigint_to_json, field, i64_from_json};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurent {
    min_deg: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: impl Into<BigInt>, deg: i64) -> Self {
        Self::from_coeffs(deg, vec![c.into()])
    }

    /// The class `L` itself.
    pub fn l() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = L^{-1}`.
    pub fn q() -> Self {
        Self::monomial(1, -1)
    }

    /// `L^n - 1`.
    pub fn l_pow_minus_one(n: u32) -> Self {
        Self::one().mul_l_pow_minus_one(n)
    }

    /// Builds from ascending coefficients starting at `min_deg`, trimming zeros.
    pub fn from_coeffs(min_deg: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        Self {
            min_deg: min_deg + lead as i64,
            coeffs,
        }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(d, c)| (d, c.into())).collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (d, c) in terms {
            coeffs[(d - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.min_deg == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn min_deg(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_deg)
    }

    pub fn max_deg(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_deg + self.coeffs.len() as i64 - 1)
    }

    /// Dense ascending coefficients from `min_deg` upward.
    pub fn dense_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: i64) -> BigInt {
        let idx = deg - self.min_deg;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_deg + i as i64, c))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    pub fn has_negative_degree(&self) -> bool {
        self.min_deg().is_some_and(|d| d < 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().unwrap().max(other.max_deg().unwrap());
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (src, off) in [(self, self.min_deg - lo), (other, other.min_deg - lo)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                coeffs[off as usize + i] += c;
            }
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            min_deg: self.min_deg,
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
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.min_deg + other.min_deg, coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            min_deg: self.min_deg + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `L ↦ L^r` for `r ≥ 1`.
    pub fn dilate(&self, r: u32) -> Self {
        assert!(r >= 1, "dilation factor must be positive");
        Self::from_terms(self.terms().map(|(d, c)| (d * r as i64, c.clone())))
    }

    /// Drops every term of degree above `deg`.
    pub fn truncate_above(&self, deg: i64) -> Self {
        if self.is_zero() || deg < self.min_deg {
            return Self::zero();
        }
        let keep = ((deg - self.min_deg + 1) as usize).min(self.coeffs.len());
        Self::from_coeffs(self.min_deg, self.coeffs[..keep].to_vec())
    }

    /// `self · (L^n - 1)`, in linear time.
    pub fn mul_l_pow_minus_one(&self, n: u32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let n = n as usize;
        let len = self.coeffs.len();
        let mut out = vec![BigInt::zero(); len + n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] -= c;
            out[i + n] += c;
        }
        Self::from_coeffs(self.min_deg, out)
    }

    /// `self / (L^n - 1)` when the division is exact, in linear time.
    pub fn div_l_pow_minus_one(&self, n: u32) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = n as usize;
        let len = self.coeffs.len();
        if len <= n {
            return None;
        }
        // self = (L^n - 1)·Q  ⇒  Q_i = Q_{i-n} - c_i for the low part.
        let qlen = len - n;
        let mut quot: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let prev = if i >= n { quot[i - n].clone() } else { BigInt::zero() };
            quot.push(prev - &self.coeffs[i]);
        }
        let zero = BigInt::zero();
        for i in qlen..len {
            let expect = if i >= n { &quot[i - n] } else { &zero };
            if *expect != self.coeffs[i] {
                return None;
            }
        }
        Some(Self::from_coeffs(self.min_deg, quot))
    }

    /// Exact division by an arbitrary nonzero Laurent polynomial.
    ///
    /// `Ok(None)` means no integer Laurent quotient exists.
    pub fn divexact(&self, divisor: &Self) -> Result<Option<Self>> {
        if divisor.is_zero() {
            return domain("division by the zero Laurent polynomial");
        }
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let b = &divisor.coeffs;
        let blen = b.len();
        if self.coeffs.len() < blen {
            return Ok(None);
        }
        let lead = &b[blen - 1];
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - blen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + blen - 1];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &qi * bj;
            }
            quot[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(Self::from_coeffs(self.min_deg - divisor.min_deg, quot)))
    }

    /// Divides every coefficient by `d`, if all are divisible.
    pub fn div_int_exact(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (qc, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(qc);
        }
        Some(Self::from_coeffs(self.min_deg, coeffs))
    }

    /// Greatest common divisor of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact value at a rational point.
    pub fn eval(&self, t: &ExactRational) -> Result<ExactRational> {
        if self.is_zero() {
            return Ok(ExactRational::zero());
        }
        if t.is_zero() && self.min_deg < 0 {
            return domain("cannot evaluate negative powers of L at 0");
        }
        // Horner over the dense block, then scale by t^{min_deg}.
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + ExactRational::from_integer(c.clone());
        }
        let base = if self.min_deg >= 0 {
            num_traits::pow(t.clone(), self.min_deg as usize)
        } else {
            num_traits::pow(t.recip(), (-self.min_deg) as usize)
        };
        Ok(acc * base)
    }

    /// Ring-homomorphic image under `L ↦ image`.
    ///
    /// Negative powers of `L` only have a polynomial image when `image` is a
    /// unit constant `±1`.
    pub fn substitute(&self, image: &MultiPoly) -> Result<MultiPoly> {
        if self.has_negative_degree() {
            let unit = image
                .constant_value()
                .is_some_and(|c| c.abs().is_one());
            if !unit {
                return domain(format!(
                    "cannot substitute L ↦ {image} into {self}: negative powers of L have no polynomial image"
                ));
            }
        }
        let mut acc = image.zero_like();
        for (d, c) in self.terms() {
            // ±1 is its own inverse.
            let power = image.pow(d.unsigned_abs() as u32);
            acc = acc.add(&power.scale(c));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "min_deg": self.min_deg().unwrap_or(0),
            "coeffs": self.coeffs.iter().map(bigint_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let min_deg = i64_from_json(field(v, "min_deg")?)?;
        let coeffs = array(field(v, "coeffs")?, "coeffs")?
            .iter()
            .map(bigint_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(min_deg, coeffs))
    }
}

pub(crate) fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, d: i64) -> fmt::Result {
    match d {
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{d}"),
    }
}

impl fmt::Display for IntLaurent {
    /// Descending powers with explicit signs: `L^4 - L^3 - L^2 + L`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if d == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                fmt_power(f, "L", d)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurent({self})")
    }
}

impl Ring for IntLaurent {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        IntLaurent::is_zero(self)
    }
    fn is_one(&self) -> bool {
        IntLaurent::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        IntLaurent::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        IntLaurent::mul(self, other)
    }
    fn neg(&self) -> Self {
        IntLaurent::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        IntLaurent::sub(self, other)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(n)
    }
    fn to_json(&self) -> Value {
        IntLaurent::to_json(self)
    }
}
