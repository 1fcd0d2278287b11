//! The Grothendieck ring of stacks as `K0(V)[L^{-1}, (L^n - 1)^{-1}]`.
//!
//! A [`MotivicClass`] is an integer polynomial in `L` over a denominator of
//! the form `L^e · ∏ (L^{n_i} - 1)`. Only `L` and the `L^n - 1` are
//! invertible, so any other division is rejected instead of approximated.
//!
//! There is no global canonical form. Values are kept *normalized* (shared
//! factors cancelled where a cheap exact division finds them) and equality
//! is decided by cross-multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{ExactRational, IntLaurent, MultiPoly};
use crate::error::{domain, Error, Result};
use crate::json::{array, field, i64_from_json};
use crate::ring::Ring;

/// `L^{l_exp} · ∏ (L^n - 1)` with the factor multiset kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DenomForm {
    l_exp: u32,
    factors: Vec<u32>,
}

impl DenomForm {
    pub fn new(l_exp: u32, mut factors: Vec<u32>) -> Result<Self> {
        if factors.contains(&0) {
            return domain("denominator factors L^n - 1 need n ≥ 1");
        }
        factors.sort_unstable();
        Ok(Self { l_exp, factors })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn l_exp(&self) -> u32 {
        self.l_exp
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.l_exp == 0 && self.factors.is_empty()
    }

    /// The denominator multiplied out as a polynomial in `L`.
    pub fn expand(&self) -> IntLaurent {
        self.factors
            .iter()
            .fold(IntLaurent::monomial(1, self.l_exp as i64), |acc, &n| {
                acc.mul_l_pow_minus_one(n)
            })
    }

    fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        factors.sort_unstable();
        Self {
            l_exp: self.l_exp + other.l_exp,
            factors,
        }
    }

    /// Multiset maximum: a common multiple of both denominators.
    fn common_multiple(&self, other: &Self) -> Self {
        let mut factors = Vec::with_capacity(self.factors.len().max(other.factors.len()));
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    factors.push(*x);
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    factors.push(*x);
                    i += 1;
                }
                (Some(_), Some(y)) => {
                    factors.push(*y);
                    j += 1;
                }
                (Some(x), None) => {
                    factors.push(*x);
                    i += 1;
                }
                (None, Some(y)) => {
                    factors.push(*y);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self {
            l_exp: self.l_exp.max(other.l_exp),
            factors,
        }
    }

    /// Multiplies `num` by `self / sub`, where `sub` divides `self` as a multiset.
    fn lift(&self, sub: &Self, num: &IntLaurent) -> IntLaurent {
        let mut out = num.shift((self.l_exp - sub.l_exp) as i64);
        let mut j = 0;
        for &n in &self.factors {
            if sub.factors.get(j) == Some(&n) {
                j += 1;
            } else {
                out = out.mul_l_pow_minus_one(n);
            }
        }
        debug_assert_eq!(j, sub.factors.len(), "lift target must contain the source multiset");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"l_exp": self.l_exp, "factors": self.factors})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let l_exp = u32::try_from(i64_from_json(field(v, "l_exp")?)?)
            .map_err(|_| Error::Domain("l_exp must be a nonnegative integer".into()))?;
        let factors = array(field(v, "factors")?, "factors")?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|u| u32::try_from(u).ok())
                    .ok_or_else(|| Error::Domain(format!("bad denominator factor {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(l_exp, factors)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let mut parts = Vec::new();
        match self.l_exp {
            0 => {}
            1 => parts.push(var.to_string()),
            e => parts.push(format!("{var}^{e}")),
        }
        for &n in &self.factors {
            if n == 1 {
                parts.push(format!("({var} - 1)"));
            } else {
                parts.push(format!("({var}^{n} - 1)"));
            }
        }
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(" * "))
        }
    }
}

#[derive(Clone)]
pub struct MotivicClass {
    num: IntLaurent,
    den: DenomForm,
}

fn proper_divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..n).filter(move |d| n.is_multiple_of(*d))
}

impl MotivicClass {
    /// Builds `num / den` and normalizes. Negative powers of `L` in `num`
    /// are moved into the denominator.
    pub fn new(num: IntLaurent, den: DenomForm) -> Self {
        Self::normalize_parts(num, den)
    }

    /// Stores `num / den` exactly as given (after moving negative `L`-powers
    /// into `den`), without cancelling anything.
    pub fn unnormalized(num: IntLaurent, mut den: DenomForm) -> Self {
        let num = match num.min_deg() {
            Some(d) if d < 0 => {
                den.l_exp += d.unsigned_abs() as u32;
                num.shift(-d)
            }
            _ => num,
        };
        Self { num, den }
    }

    pub fn from_laurent(p: IntLaurent) -> Self {
        Self::new(p, DenomForm::trivial())
    }

    pub fn zero() -> Self {
        Self::from_laurent(IntLaurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(IntLaurent::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::from_laurent(IntLaurent::constant(n))
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i64) -> Self {
        Self::from_laurent(IntLaurent::monomial(1, k))
    }

    pub fn l() -> Self {
        Self::l_pow(1)
    }

    /// `q = L^{-1}`.
    pub fn q() -> Self {
        Self::l_pow(-1)
    }

    /// `q^k = L^{-k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::l_pow(-k)
    }

    /// `1 - q^n`.
    pub fn one_minus_q_pow(n: i64) -> Self {
        Self::one().sub(&Self::q_pow(n))
    }

    /// `1 / (1 - q^n)` for `n ≠ 0`.
    pub fn inv_one_minus_q_pow(n: i64) -> Result<Self> {
        match n {
            0 => domain("1 - q^0 = 0 is not invertible"),
            n if n > 0 => Ok(Self::new(
                IntLaurent::monomial(1, n),
                DenomForm::new(0, vec![n as u32])?,
            )),
            // 1/(1 - L^m) = -1/(L^m - 1)
            n => Ok(Self::new(
                IntLaurent::constant(-1),
                DenomForm::new(0, vec![n.unsigned_abs() as u32])?,
            )),
        }
    }

    pub fn num(&self) -> &IntLaurent {
        &self.num
    }

    pub fn den(&self) -> &DenomForm {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_trivial() && self.num.is_one()
    }

    /// The class as a Laurent polynomial in `L`, when it has no `L^n - 1` factors.
    pub fn as_laurent(&self) -> Option<IntLaurent> {
        self.den
            .factors
            .is_empty()
            .then(|| self.num.shift(-(self.den.l_exp as i64)))
    }

    /// Whether two representations are identical field by field.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }

    pub fn normalize(&self) -> Self {
        Self::normalize_parts(self.num.clone(), self.den.clone())
    }

    fn normalize_parts(num: IntLaurent, den: DenomForm) -> Self {
        let Self { mut num, mut den } = Self::unnormalized(num, den);
        if num.is_zero() {
            return Self {
                num,
                den: DenomForm::trivial(),
            };
        }
        let shared = (num.min_deg().unwrap() as u32).min(den.l_exp);
        num = num.shift(-(shared as i64));
        den.l_exp -= shared;

        // Cancel whole factors, else shrink L^n - 1 to L^d - 1 when the
        // numerator absorbs (L^n - 1)/(L^d - 1). Largest n first.
        loop {
            let mut changed = false;
            let mut i = den.factors.len();
            while i > 0 {
                i -= 1;
                let n = den.factors[i];
                if let Some(qt) = num.div_l_pow_minus_one(n) {
                    num = qt;
                    den.factors.remove(i);
                    changed = true;
                    continue;
                }
                for d in proper_divisors(n) {
                    if let Some(qt) = num.mul_l_pow_minus_one(d).div_l_pow_minus_one(n) {
                        num = qt;
                        den.factors[i] = d;
                        changed = true;
                        break;
                    }
                }
            }
            den.factors.sort_unstable();
            if !changed {
                break;
            }
        }
        Self { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalize_parts(self.num.add(&other.num), self.den.clone());
        }
        let common = self.den.common_multiple(&other.den);
        let num = common
            .lift(&self.den, &self.num)
            .add(&common.lift(&other.den, &other.num));
        Self::normalize_parts(num, common)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalize_parts(self.num.mul(&other.num), self.den.product(&other.den))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::normalize_parts(self.num.scale(c), self.den.clone())
    }

    /// Divides by an integer when the normalized numerator is divisible.
    pub fn div_int_exact(&self, d: &BigInt) -> Option<Self> {
        let n = self.normalize();
        n.num.div_int_exact(d).map(|num| Self { num, den: n.den })
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::normalize_parts(self.num.shift(k), self.den.clone())
    }

    /// The inverse class, defined iff the numerator is `±L^e · ∏ (L^{n_i} - 1)`.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("the zero class is not invertible");
        }
        let e = self.num.min_deg().unwrap();
        let mut rest = self.num.shift(-e);
        let mut factors = Vec::new();
        while rest.max_deg() != Some(0) {
            // The lowest positive-degree term sits at the smallest n_i.
            let n = rest
                .terms()
                .map(|(d, _)| d)
                .find(|&d| d > 0)
                .expect("nonconstant polynomial has a positive-degree term");
            match rest.div_l_pow_minus_one(n as u32) {
                Some(qt) => {
                    factors.push(n as u32);
                    rest = qt;
                }
                None => return non_invertible(self),
            }
        }
        let sign = rest.coeff(0);
        if !sign.abs().is_one() {
            return non_invertible(self);
        }
        let num = self.den.expand().scale(&sign);
        Ok(Self::new(num, DenomForm::new(e as u32, factors)?))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.try_inv()?))
    }

    /// Integer power; negative exponents require invertibility.
    pub fn try_pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.try_inv()? } else { self.clone() };
        Ok(Ring::pow(&base, exp.unsigned_abs() as u32))
    }

    /// Equality by cross-multiplication over a common denominator.
    pub fn class_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let common = self.den.common_multiple(&other.den);
        common.lift(&self.den, &self.num) == common.lift(&other.den, &other.num)
    }

    /// `[GL(n)] = ∏_{i=0}^{n-1} (L^n - L^i)`.
    pub fn gl(n: i64) -> Result<Self> {
        if n <= 0 {
            return domain(format!("GL(n) needs n ≥ 1, got {n}"));
        }
        let top = IntLaurent::monomial(1, n);
        let prod = (0..n).fold(IntLaurent::one(), |acc, i| {
            acc.mul(&top.sub(&IntLaurent::monomial(1, i)))
        });
        Ok(Self::from_laurent(prod))
    }

    /// `[BGL(n)] = 1/[GL(n)] = 1/(L^{n(n-1)/2} ∏_{i=1}^{n} (L^i - 1))`.
    pub fn bgl(n: i64) -> Result<Self> {
        if n <= 0 {
            return domain(format!("BGL(n) needs n ≥ 1, got {n}"));
        }
        let n = n as u32;
        Ok(Self::new(
            IntLaurent::one(),
            DenomForm::new(n * (n - 1) / 2, (1..=n).collect())?,
        ))
    }

    /// `[Gr(k, n)]`, the Gaussian binomial `[n choose k]_L`.
    pub fn grassmannian(k: i64, n: i64) -> Result<Self> {
        if k < 0 || n < 0 || k > n {
            return domain(format!("Gr(k, n) needs 0 ≤ k ≤ n, got k = {k}, n = {n}"));
        }
        let num = (1..=k).fold(IntLaurent::one(), |acc, i| {
            acc.mul_l_pow_minus_one((n - k + i) as u32)
        });
        let class = Self::new(num, DenomForm::new(0, (1..=k as u32).collect())?);
        if !class.den.is_trivial() {
            return Err(Error::Consistency(format!(
                "Gaussian binomial [{n} choose {k}] did not reduce to a polynomial"
            )));
        }
        Ok(class)
    }

    /// Exact value at `L = t`.
    pub fn eval(&self, t: &ExactRational) -> Result<ExactRational> {
        let den = self.den.expand().eval(t)?;
        if den.is_zero() {
            return domain(format!("denominator of {self} vanishes at L = {t}"));
        }
        Ok(self.num.eval(t)? / den)
    }

    /// Hodge–Deligne realization `L ↦ uv`, keeping the denominator structural.
    pub fn realize_hd(&self) -> HdRealization {
        let num = self
            .num
            .substitute(&MultiPoly::uv_monomial(1, 1))
            .expect("normalized numerators have no negative powers of L");
        HdRealization {
            num,
            l_exp: self.den.l_exp,
            factors: self.den.factors.clone(),
        }
    }

    /// Laurent expansion in `q = L^{-1}` up to and including `q^degree`.
    ///
    /// The result is an [`IntLaurent`] read in the variable `q`.
    pub fn q_expansion(&self, degree: i64) -> IntLaurent {
        // num(L) = Σ c_d L^d = Σ c_d q^{-d};  1/L^e = q^e;
        // 1/(L^n - 1) = q^n / (1 - q^n) = Σ_{j ≥ 1} q^{jn}.
        let lo = -self.num.max_deg().unwrap_or(0) + self.den.l_exp as i64;
        if self.is_zero() || degree < lo {
            return IntLaurent::zero();
        }
        let width = (degree - lo + 1) as usize;
        let mut dense = vec![BigInt::zero(); width];
        for (d, c) in self.num.terms() {
            let at = -d + self.den.l_exp as i64 - lo;
            dense[at as usize] = c.clone();
        }
        for &n in &self.den.factors {
            let n = n as usize;
            // multiply by q^n, then divide by (1 - q^n)
            let mut shifted = vec![BigInt::zero(); width];
            if n < width {
                shifted[n..].clone_from_slice(&dense[..width - n]);
            }
            for i in n..width {
                let prev = shifted[i - n].clone();
                shifted[i] += prev;
            }
            dense = shifted;
        }
        IntLaurent::from_coeffs(lo, dense)
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Ok(Self::new(
            IntLaurent::from_json(field(v, "num")?)?,
            DenomForm::from_json(field(v, "den")?)?,
        ))
    }
}

fn non_invertible<T>(a: &MotivicClass) -> Result<T> {
    domain(format!(
        "{a} is not invertible: only ±L^e·∏(L^n - 1) can be inverted"
    ))
}

impl PartialEq for MotivicClass {
    fn eq(&self, other: &Self) -> bool {
        self.class_eq(other)
    }
}

impl Eq for MotivicClass {}

impl fmt::Display for MotivicClass {
    /// `P(L) / (L^e * (L^a - 1) * ...)`, denominators never expanded.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_trivial() {
            return write!(f, "{}", self.num);
        }
        if self.num.terms().count() > 1 {
            write!(f, "({}) / ", self.num)?;
        } else {
            write!(f, "{} / ", self.num)?;
        }
        self.den.render(f, "L")
    }
}

impl fmt::Debug for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotivicClass({self})")
    }
}

impl Ring for MotivicClass {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        MotivicClass::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.class_eq(&Self::one())
    }
    fn add(&self, other: &Self) -> Self {
        MotivicClass::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MotivicClass::mul(self, other)
    }
    fn neg(&self) -> Self {
        MotivicClass::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        MotivicClass::sub(self, other)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::integer(n)
    }
    fn to_json(&self) -> Value {
        MotivicClass::to_json(self)
    }
}

/// Hodge–Deligne image of a class: realized numerator over the structural
/// denominator `(uv)^{l_exp} · ∏ ((uv)^n - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HdRealization {
    pub num: MultiPoly,
    pub l_exp: u32,
    pub factors: Vec<u32>,
}

impl fmt::Display for HdRealization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l_exp == 0 && self.factors.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({}) / ", self.num)?;
        } else {
            write!(f, "{} / ", self.num)?;
        }
        let uv = |k: u32| {
            if k == 1 {
                "u*v".to_string()
            } else {
                format!("u^{k}*v^{k}")
            }
        };
        let mut parts = Vec::new();
        if self.l_exp > 0 {
            parts.push(uv(self.l_exp));
        }
        for &n in &self.factors {
            parts.push(format!("({} - 1)", uv(n)));
        }
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(" * "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::integer;

    fn lp(terms: &[(i64, i64)]) -> IntLaurent {
        IntLaurent::from_terms(terms.iter().copied())
    }

    fn class(num: &[(i64, i64)], l_exp: u32, factors: &[u32]) -> MotivicClass {
        MotivicClass::new(lp(num), DenomForm::new(l_exp, factors.to_vec()).unwrap())
    }

    #[test]
    fn bgl1_plus_one() {
        let a = MotivicClass::bgl(1).unwrap().add(&MotivicClass::one());
        assert!(a.same_representation(&class(&[(1, 1)], 0, &[1])));
    }

    #[test]
    fn group_times_classifying_stack_is_one() {
        let g = MotivicClass::gl(1).unwrap();
        let bg = MotivicClass::bgl(1).unwrap();
        assert!(g.mul(&bg).is_one());
        let g2 = MotivicClass::gl(2).unwrap();
        assert!(g2.mul(&MotivicClass::bgl(2).unwrap()).is_one());
    }

    #[test]
    fn statement_two_difference() {
        // L²/((L²-1)(L²-L)) - 1/(L-1)
        let gl2 = MotivicClass::gl(2).unwrap();
        let first = MotivicClass::l_pow(2).try_div(&gl2).unwrap();
        let diff = first.sub(&MotivicClass::bgl(1).unwrap());
        let expect = MotivicClass::from_laurent(lp(&[(3, -1), (2, 1), (1, 1)]))
            .try_div(&gl2)
            .unwrap();
        assert_eq!(diff, expect);
    }

    #[test]
    fn normalize_examples() {
        let a = MotivicClass::unnormalized(lp(&[(2, 1), (0, -1)]), DenomForm::new(0, vec![1]).unwrap());
        assert!(a.normalize().same_representation(&class(&[(1, 1), (0, 1)], 0, &[])));

        let b = MotivicClass::unnormalized(lp(&[(0, 1), (-2, -1)]), DenomForm::new(0, vec![2]).unwrap());
        let nb = b.normalize();
        assert!(nb.num().is_one());
        assert_eq!(nb.den(), &DenomForm::new(2, vec![]).unwrap());

        let c = MotivicClass::unnormalized(
            lp(&[(4, 1), (3, -1), (2, -1), (1, 1)]),
            DenomForm::new(1, vec![1, 2]).unwrap(),
        );
        assert!(c.normalize().is_one());
    }

    #[test]
    fn divisor_reduction_shrinks_factors() {
        // (L + 1)/(L² - 1) = 1/(L - 1)
        let a = class(&[(1, 1), (0, 1)], 0, &[2]);
        assert!(a.same_representation(&class(&[(0, 1)], 0, &[1])));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = MotivicClass::unnormalized(lp(&[(1, 1), (0, 1)]), DenomForm::new(0, vec![2]).unwrap());
        assert!(a.class_eq(&MotivicClass::bgl(1).unwrap()));
        assert!(!MotivicClass::bgl(1)
            .unwrap()
            .class_eq(&class(&[(0, 1)], 0, &[2])));
    }

    #[test]
    fn gl_classes() {
        assert!(MotivicClass::gl(1).unwrap().same_representation(&class(&[(1, 1), (0, -1)], 0, &[])));
        assert_eq!(
            MotivicClass::gl(2).unwrap().as_laurent().unwrap(),
            lp(&[(4, 1), (3, -1), (2, -1), (1, 1)])
        );
        assert_eq!(MotivicClass::gl(3).unwrap().eval(&integer(2)).unwrap(), integer(168));
        assert!(MotivicClass::gl(0).is_err());
        assert!(MotivicClass::bgl(-1).is_err());
    }

    #[test]
    fn bgl2_shape() {
        let b = MotivicClass::bgl(2).unwrap();
        assert_eq!(b.den(), &DenomForm::new(1, vec![1, 2]).unwrap());
        assert_eq!(b.to_string(), "1 / (L * (L - 1) * (L^2 - 1))");
    }

    #[test]
    fn grassmannians() {
        assert_eq!(
            MotivicClass::grassmannian(1, 2).unwrap().as_laurent().unwrap(),
            lp(&[(1, 1), (0, 1)])
        );
        assert!(MotivicClass::grassmannian(0, 5).unwrap().is_one());
        assert_eq!(
            MotivicClass::grassmannian(2, 4).unwrap().as_laurent().unwrap(),
            lp(&[(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)])
        );
        assert!(MotivicClass::grassmannian(3, 2).is_err());
        assert!(MotivicClass::grassmannian(-1, 2).is_err());
    }

    #[test]
    fn inversion() {
        let a = class(&[(3, 1), (2, -1)], 0, &[]); // L²(L - 1)
        let inv = a.try_inv().unwrap();
        assert!(inv.same_representation(&class(&[(0, 1)], 2, &[1])));
        let b = class(&[(1, 1), (0, -2)], 0, &[]);
        assert!(matches!(b.try_inv(), Err(Error::Domain(_))));
        // 1 - L = -(L - 1)
        let c = class(&[(1, -1), (0, 1)], 0, &[]);
        assert_eq!(c.try_inv().unwrap(), class(&[(0, -1)], 0, &[1]));
        // (L - 1)(L^2 - 1)(L^3 - 1) with a repeated factor
        let d = MotivicClass::from_laurent(
            IntLaurent::l_pow_minus_one(1)
                .mul_l_pow_minus_one(3)
                .mul_l_pow_minus_one(1),
        );
        assert!(d.mul(&d.try_inv().unwrap()).is_one());
    }

    #[test]
    fn realization() {
        assert_eq!(MotivicClass::l().realize_hd().num, MultiPoly::uv_monomial(1, 1));
        let one_minus_l = MotivicClass::one().sub(&MotivicClass::l());
        assert_eq!(one_minus_l.realize_hd().num.to_string(), "-u*v + 1");
        let gl2 = MotivicClass::gl(2).unwrap();
        let a = MotivicClass::from_laurent(lp(&[(3, -1), (2, 1), (1, 1)]))
            .try_div(&gl2)
            .unwrap();
        let r = a.realize_hd();
        // normalized: (-L² + L + 1)/((L - 1)(L² - 1)), so the L is cancelled
        assert_eq!(r.num.to_string(), "-u^2*v^2 + u*v + 1");
        assert_eq!(r.factors, vec![1, 2]);
    }

    #[test]
    fn q_expansion_of_geometric_series() {
        // 1/(1 - q) = L/(L - 1) = 1 + q + q² + ...
        let a = MotivicClass::inv_one_minus_q_pow(1).unwrap();
        assert_eq!(a.q_expansion(4), lp(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
        // L + 1 = q^{-1} + 1
        let b = class(&[(1, 1), (0, 1)], 0, &[]);
        assert_eq!(b.q_expansion(3), lp(&[(-1, 1), (0, 1)]));
    }

    #[test]
    fn negative_n_canonicalization() {
        // 1/(1 - q^{-2}) = -q²/(1 - q²)
        let a = MotivicClass::inv_one_minus_q_pow(-2).unwrap();
        let b = MotivicClass::q_pow(2)
            .mul(&MotivicClass::inv_one_minus_q_pow(2).unwrap())
            .neg();
        assert_eq!(a, b);
        assert!(MotivicClass::inv_one_minus_q_pow(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = MotivicClass::bgl(3).unwrap().add(&MotivicClass::l_pow(5));
        let back = MotivicClass::from_json(&a.to_json()).unwrap();
        assert!(back.same_representation(&a));
    }
}
