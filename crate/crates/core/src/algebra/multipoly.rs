//! Sparse multivariate integer polynomials.
//!
//! Used for Hodge–Deligne values in `u, v` and for the Taylor expansions of
//! the `R_k(q_1, …, q_k)` functions. Terms are keyed by exponent tuples in
//! lexicographic order; rendering walks them in descending order.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{domain, Result};
use crate::json::{array, bigint_from_json, bigint_to_json, field};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    /// Variable names for the Hodge–Deligne realization.
    pub fn hd_vars() -> Arc<[String]> {
        Arc::from(vec!["u".to_string(), "v".to_string()])
    }

    pub fn var_names<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
        assert!(!names.is_empty(), "a polynomial ring needs at least one variable");
        names.iter().map(|s| s.as_ref().to_string()).collect()
    }

    pub fn zero(vars: Arc<[String]>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn monomial(vars: Arc<[String]>, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent tuple length must match variable count");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { vars, terms }
    }

    /// The `i`-th variable.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, exps, 1)
    }

    /// `u^a v^b` in the Hodge–Deligne ring.
    pub fn uv_monomial(a: u32, b: u32) -> Self {
        Self::monomial(Self::hd_vars(), vec![a, b], 1)
    }

    pub fn from_terms<I, C>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent tuples.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.vars.len(), "exponent tuple length must match variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, None)
    }

    /// Product keeping only monomials of total degree `≤ cap` when a cap is given.
    pub fn mul_truncated(&self, other: &Self, cap: Option<u32>) -> Self {
        self.check_same_ring(other);
        let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(cap) = cap {
                    if da + eb.iter().sum::<u32>() > cap {
                        continue;
                    }
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self {
            vars: self.vars.clone(),
            terms: acc,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        Ring::pow(self, exp)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Drops every monomial of total degree above `cap`.
    pub fn truncate_total_degree(&self, cap: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= cap)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The homogeneous component of highest total degree.
    pub fn top_homogeneous_part(&self) -> Self {
        let Some(top) = self.total_degree() else {
            return self.clone();
        };
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == top)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides every coefficient by `d`, if all are divisible.
    pub fn div_int_exact(&self, d: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if !(c % d).is_zero() {
                return None;
            }
            terms.insert(e.clone(), c / d);
        }
        Some(Self {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": self.vars.iter().collect::<Vec<_>>(),
            "terms": self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| json!({"exp": e, "coeff": bigint_to_json(c)}))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let vars: Vec<String> = array(field(v, "vars")?, "vars")?
            .iter()
            .map(|x| x.as_str().map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| crate::Error::Domain("variable names must be strings".into()))?;
        if vars.is_empty() {
            return domain("a polynomial ring needs at least one variable");
        }
        let mut p = Self::zero(Self::var_names(&vars));
        for t in array(field(v, "terms")?, "terms")? {
            let exps: Vec<u32> = array(field(t, "exp")?, "exp")?
                .iter()
                .map(|x| x.as_u64().and_then(|u| u32::try_from(u).ok()))
                .collect::<Option<_>>()
                .ok_or_else(|| crate::Error::Domain("exponents must be small nonnegative integers".into()))?;
            if exps.len() != vars.len() {
                return domain("exponent tuple length must match variable count");
            }
            p.add_term(exps, bigint_from_json(field(t, "coeff")?)?);
        }
        Ok(p)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(x, _)| **x > 0)
                .map(|(x, name)| if *x == 1 { name.clone() } else { format!("{name}^{x}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.vars.clone())
    }
    fn one_like(&self) -> Self {
        Self::one(self.vars.clone())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.vars.clone(), n)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
    fn to_json(&self) -> Value {
        MultiPoly::to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uv(terms: &[((u32, u32), i64)]) -> MultiPoly {
        MultiPoly::from_terms(
            MultiPoly::hd_vars(),
            terms.iter().map(|&((a, b), c)| (vec![a, b], c)),
        )
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = uv(&[((1, 0), 1), ((0, 1), 2)]);
        let z = p.sub(&p);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        let q = uv(&[((1, 0), 1), ((1, 0), -1), ((0, 0), 3)]);
        assert_eq!(q.num_terms(), 1);
    }

    #[test]
    fn top_part_of_statement_one_polynomial() {
        let p = uv(&[
            ((2, 1), -1),
            ((1, 2), -1),
            ((2, 0), 1),
            ((0, 2), 1),
            ((1, 1), 2),
            ((1, 0), -1),
            ((0, 1), -1),
        ]);
        assert_eq!(p.top_homogeneous_part(), uv(&[((2, 1), -1), ((1, 2), -1)]));
        assert_eq!(p.to_string(), "-u^2*v + u^2 - u*v^2 + 2*u*v - u + v^2 - v");
    }

    #[test]
    fn truncated_product() {
        let one_plus_u = uv(&[((0, 0), 1), ((1, 0), 1)]);
        let sq = one_plus_u.mul_truncated(&one_plus_u, Some(1));
        assert_eq!(sq, uv(&[((0, 0), 1), ((1, 0), 2)]));
    }

    #[test]
    fn json_round_trip() {
        let p = uv(&[((3, 1), -5), ((0, 0), 7)]);
        assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    #[should_panic(expected = "different variable sets")]
    fn mixed_rings_panic() {
        let a = MultiPoly::one(MultiPoly::hd_vars());
        let b = MultiPoly::one(MultiPoly::var_names(&["q1"]));
        let _ = a.add(&b);
    }
}
