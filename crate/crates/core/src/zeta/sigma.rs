use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::class::MotivicClass;
use crate::error::{domain, Result};
use crate::ring::Ring;

/// Polynomial in formal symbols `σ_1, …, σ_J` (standing for the symmetric
/// powers `σ^j b` of an unspecified class `b`) with [`MotivicClass`]
/// coefficients.
#[derive(Clone)]
pub struct FormalSigma {
    budget: usize,
    terms: BTreeMap<Vec<u32>, MotivicClass>,
}

impl FormalSigma {
    pub fn zero(budget: usize) -> Self {
        Self {
            budget,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: MotivicClass, budget: usize) -> Self {
        let mut s = Self::zero(budget);
        s.add_term(vec![0; budget], c);
        s
    }

    /// The symbol `σ_j`, `1 ≤ j ≤ budget`.
    pub fn symbol(j: usize, budget: usize) -> Result<Self> {
        if j == 0 || j > budget {
            return domain(format!("symbol σ_{j} outside the budget 1..={budget}"));
        }
        let mut exps = vec![0; budget];
        exps[j - 1] = 1;
        let mut s = Self::zero(budget);
        s.add_term(exps, MotivicClass::one());
        Ok(s)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &MotivicClass)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial `∏ σ_j^{exps[j-1]}`.
    pub fn coeff(&self, exps: &[u32]) -> MotivicClass {
        self.terms.get(exps).cloned().unwrap_or_else(MotivicClass::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: MotivicClass) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &MotivicClass) -> Self {
        let mut out = Self::zero(self.budget);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x.mul(c));
        }
        out
    }

    /// Evaluates with `σ_j ↦ values[j-1]`.
    pub fn substitute(&self, values: &[MotivicClass]) -> Result<MotivicClass> {
        let mut acc = MotivicClass::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let Some(v) = values.get(j) else {
                    return domain(format!("no value supplied for σ_{}", j + 1));
                };
                term = term.mul(&Ring::pow(v, e));
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl PartialEq for FormalSigma {
    fn eq(&self, other: &Self) -> bool {
        self.budget == other.budget && self.terms == other.terms
    }
}

impl fmt::Display for FormalSigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let syms: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("s{}", j + 1)
                    } else {
                        format!("s{}^{e}", j + 1)
                    }
                })
                .collect();
            match (syms.is_empty(), c.is_one()) {
                (true, _) => write!(f, "({c})")?,
                (false, true) => write!(f, "{}", syms.join("*"))?,
                (false, false) => write!(f, "({c})*{}", syms.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSigma[{}]({self})", self.budget)
    }
}

impl Ring for FormalSigma {
    fn zero_like(&self) -> Self {
        Self::zero(self.budget)
    }
    fn one_like(&self) -> Self {
        Self::constant(MotivicClass::one(), self.budget)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        assert_eq!(self.budget, other.budget, "formal σ polynomials with different budgets");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.budget, other.budget, "formal σ polynomials with different budgets");
        let mut out = Self::zero(self.budget);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self {
            budget: self.budget,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(MotivicClass::integer(n), self.budget)
    }
    fn compatible(&self, other: &Self) -> bool {
        self.budget == other.budget
    }
    fn to_json(&self) -> Value {
        json!({
            "budget": self.budget,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| json!({"exp": e, "coeff": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}
