//! The coefficient-ring abstraction shared by series, power structures and
//! the λ-providers.
//!
//! Elements carry their own context (variable names, symbol budgets), so the
//! additive and multiplicative units are produced from an existing element
//! rather than from the type alone.

use std::fmt;

use serde_json::Value;

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Image of an integer in the ring of `self`.
    fn from_int_like(&self, n: i64) -> Self;

    /// Whether two elements live in the same concrete ring (same variables,
    /// same symbol budget). Binary series operations refuse mixed rings.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
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

    fn to_json(&self) -> Value;
}
