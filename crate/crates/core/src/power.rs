//! Power structures induced by a pre-λ structure.
//!
//! Every series `A(T)` with constant term one factors uniquely as
//! `∏_k λ_{b_k}(T^k)`, and `A(T)^m := ∏_k λ_{m b_k}(T^k)`.

use std::fmt;

use serde_json::{json, Value};

use crate::class::MotivicClass;
use crate::error::{domain, Result};
use crate::ring::Ring;
use crate::series::TruncatedSeries;
use crate::zeta::{zeta_class_with, ZetaConfig};

/// A pre-λ structure: `a ↦ λ_a(T)` with `λ_a = 1 + aT mod T²`.
pub trait LambdaProvider<R: Ring>: Send + Sync {
    fn lambda(&self, a: &R, order: usize) -> Result<TruncatedSeries<R>>;
    fn name(&self) -> String;
}

/// The Kapranov zeta function on the stack ring.
#[derive(Clone, Debug, Default)]
pub struct KapranovZeta {
    pub cfg: ZetaConfig,
}

impl LambdaProvider<MotivicClass> for KapranovZeta {
    fn lambda(&self, a: &MotivicClass, order: usize) -> Result<TruncatedSeries<MotivicClass>> {
        zeta_class_with(a, order, &self.cfg)
    }
    fn name(&self) -> String {
        "zeta".into()
    }
}

/// `λ^{op}_a(T) = (λ_a(-T))^{-1}`.
#[derive(Clone, Debug, Default)]
pub struct Opposite<P>(pub P);

impl<R: Ring, P: LambdaProvider<R>> LambdaProvider<R> for Opposite<P> {
    fn lambda(&self, a: &R, order: usize) -> Result<TruncatedSeries<R>> {
        self.0.lambda(a, order)?.alternate().inv()
    }
    fn name(&self) -> String {
        format!("opposite({})", self.0.name())
    }
}

/// `λ_a(T) + a²T²`: still `1 + aT mod T²` but no longer additive in `a`.
/// Used as a negative control for the axiom checks.
#[derive(Clone, Debug, Default)]
pub struct Perturbed<P>(pub P);

impl<R: Ring, P: LambdaProvider<R>> LambdaProvider<R> for Perturbed<P> {
    fn lambda(&self, a: &R, order: usize) -> Result<TruncatedSeries<R>> {
        let mut s = self.0.lambda(a, order)?;
        if order >= 2 {
            let bumped = s.coeff(2).add(&a.mul(a));
            s.set_coeff(2, bumped);
        }
        Ok(s)
    }
    fn name(&self) -> String {
        format!("perturbed({})", self.0.name())
    }
}

fn require_unit_constant<R: Ring>(a: &TruncatedSeries<R>) -> Result<()> {
    if a.coeff(0).is_one() {
        Ok(())
    } else {
        domain(format!("power structure needs constant term 1, found {}", a.coeff(0)))
    }
}

/// `λ_b(T^k)` reported to `order`.
fn lambda_at_tk<R: Ring, P: LambdaProvider<R> + ?Sized>(
    provider: &P,
    b: &R,
    k: usize,
    order: usize,
) -> Result<TruncatedSeries<R>> {
    provider.lambda(b, order / k)?.substitute_tk_to(k, order)
}

/// The exponents `(b_1, …, b_N)` with `A(T) = ∏_k λ_{b_k}(T^k)` to order `N`.
pub fn lambda_factorize<R: Ring, P: LambdaProvider<R> + ?Sized>(
    a: &TruncatedSeries<R>,
    provider: &P,
) -> Result<Vec<R>> {
    require_unit_constant(a)?;
    let order = a.order();
    let mut rest = a.clone();
    let mut bs = Vec::with_capacity(order);
    for k in 1..=order {
        let b = rest.coeff(k).clone();
        if !b.is_zero() {
            let inv = lambda_at_tk(provider, &b, k, order)?.inv()?;
            rest = rest.mul(&inv)?;
        }
        bs.push(b);
    }
    Ok(bs)
}

/// `∏_k λ_{b_k}(T^k)` to `order`.
pub fn reconstruct<R: Ring, P: LambdaProvider<R> + ?Sized>(
    bs: &[R],
    like: &R,
    order: usize,
    provider: &P,
) -> Result<TruncatedSeries<R>> {
    let mut acc = TruncatedSeries::one(like, order);
    for (i, b) in bs.iter().enumerate().take(order) {
        if !b.is_zero() {
            acc = acc.mul(&lambda_at_tk(provider, b, i + 1, order)?)?;
        }
    }
    Ok(acc)
}

/// `A(T)^m`.
pub fn power<R: Ring, P: LambdaProvider<R> + ?Sized>(
    a: &TruncatedSeries<R>,
    m: &R,
    provider: &P,
) -> Result<TruncatedSeries<R>> {
    if !a.coeff(0).compatible(m) {
        return domain("exponent and series coefficients come from different rings");
    }
    let bs = lambda_factorize(a, provider)?;
    let scaled: Vec<R> = bs.iter().map(|b| m.mul(b)).collect();
    reconstruct(&scaled, m, a.order(), provider)
}

/// `(1 + T)^m`.
pub fn binomial_series<R: Ring, P: LambdaProvider<R> + ?Sized>(
    m: &R,
    order: usize,
    provider: &P,
) -> Result<TruncatedSeries<R>> {
    power(&TruncatedSeries::one_plus_t(m, order), m, provider)
}

/// Inputs for one round of axiom checks.
#[derive(Clone, Debug)]
pub struct AxiomSample<R: Ring> {
    pub a: TruncatedSeries<R>,
    pub b: TruncatedSeries<R>,
    pub m: R,
    pub n: R,
    /// Substitution exponent for `T ↦ T^k`.
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub statement: &'static str,
    pub checked: usize,
    /// Sample index, first differing coefficient, both sides rendered.
    pub failure: Option<(usize, usize, String, String)>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub provider: String,
    pub order: usize,
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(AxiomOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "provider": self.provider,
            "order": self.order,
            "outcomes": self.outcomes.iter().map(|o| json!({
                "axiom": o.axiom,
                "statement": o.statement,
                "checked": o.checked,
                "passed": o.passed(),
                "failure": o.failure.as_ref().map(|(s, k, l, r)| json!({
                    "sample": s, "index": k, "lhs": l, "rhs": r,
                })),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "provider {} at order {}", self.provider, self.order)?;
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "  axiom {} {}: pass ({} samples)", o.axiom, o.statement, o.checked)?,
                Some((s, k, l, r)) => writeln!(
                    f,
                    "  axiom {} {}: FAIL at sample {s}, T^{k}: {l} vs {r}",
                    o.axiom, o.statement
                )?,
            }
        }
        Ok(())
    }
}

const STATEMENTS: [&str; 7] = [
    "A^0 = 1",
    "A^1 = A",
    "(AB)^m = A^m B^m",
    "A^(m+n) = A^m A^n",
    "A^(mn) = (A^n)^m",
    "(1+T)^m = 1 + mT + O(T^2)",
    "A(T^k)^m = (A^m)(T^k)",
];

/// Both sides of axiom `axiom` on `s` at `order`.
fn axiom_sides<R: Ring, P: LambdaProvider<R> + ?Sized>(
    axiom: u8,
    s: &AxiomSample<R>,
    order: usize,
    provider: &P,
) -> Result<(TruncatedSeries<R>, TruncatedSeries<R>)> {
    let a = s.a.truncate(order);
    let b = s.b.truncate(order);
    let one = s.m.one_like();
    let zero = s.m.zero_like();
    Ok(match axiom {
        1 => (power(&a, &zero, provider)?, TruncatedSeries::one(&one, order)),
        2 => (power(&a, &one, provider)?, a.clone()),
        3 => (
            power(&a.mul(&b)?, &s.m, provider)?,
            power(&a, &s.m, provider)?.mul(&power(&b, &s.m, provider)?)?,
        ),
        4 => (
            power(&a, &s.m.add(&s.n), provider)?,
            power(&a, &s.m, provider)?.mul(&power(&a, &s.n, provider)?)?,
        ),
        5 => (
            power(&a, &s.m.mul(&s.n), provider)?,
            power(&power(&a, &s.n, provider)?, &s.m, provider)?,
        ),
        6 => {
            let lhs = binomial_series(&s.m, order.min(1), provider)?;
            let mut rhs = TruncatedSeries::one(&one, order.min(1));
            if order >= 1 {
                rhs.set_coeff(1, s.m.clone());
            }
            (lhs, rhs)
        }
        7 => (
            power(&a.substitute_tk(s.k)?, &s.m, provider)?,
            power(&a, &s.m, provider)?.substitute_tk(s.k)?,
        ),
        _ => unreachable!("axioms are numbered 1 to 7"),
    })
}

/// Checks the seven power-structure axioms on every sample at `order`.
pub fn axiom_suite<R: Ring, P: LambdaProvider<R> + ?Sized>(
    provider: &P,
    samples: &[AxiomSample<R>],
    order: usize,
) -> Result<AxiomReport> {
    let mut outcomes = Vec::with_capacity(7);
    for axiom in 1..=7u8 {
        let mut failure = None;
        for (i, s) in samples.iter().enumerate() {
            let (lhs, rhs) = axiom_sides(axiom, s, order, provider)?;
            if let Some(k) = lhs.first_difference(&rhs) {
                failure = Some((i, k, lhs.coeff(k).to_string(), rhs.coeff(k).to_string()));
                break;
            }
        }
        outcomes.push(AxiomOutcome {
            axiom,
            statement: STATEMENTS[axiom as usize - 1],
            checked: samples.len(),
            failure,
        });
    }
    Ok(AxiomReport {
        provider: provider.name(),
        order,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta() -> KapranovZeta {
        KapranovZeta::default()
    }

    fn series(cs: &[MotivicClass]) -> TruncatedSeries<MotivicClass> {
        TruncatedSeries::new(cs.to_vec()).unwrap()
    }

    #[test]
    fn factorize_one_plus_t() {
        let one = MotivicClass::one();
        let bs = lambda_factorize(&TruncatedSeries::one_plus_t(&one, 2), &zeta()).unwrap();
        assert_eq!(bs, vec![MotivicClass::one(), MotivicClass::integer(-1)]);
        let bs = lambda_factorize(&TruncatedSeries::geometric(&one, 4), &zeta()).unwrap();
        assert_eq!(bs[0], one);
        assert!(bs[1..].iter().all(MotivicClass::is_zero));
    }

    #[test]
    fn factorize_rejects_bad_constant() {
        let s = series(&[MotivicClass::integer(2), MotivicClass::one()]);
        assert!(lambda_factorize(&s, &zeta()).is_err());
    }

    #[test]
    fn configuration_series_of_the_line() {
        let z = binomial_series(&MotivicClass::l(), 5, &zeta()).unwrap();
        assert_eq!(z.coeff(1), &MotivicClass::l());
        for k in 2..=5 {
            let expect = MotivicClass::l_pow(k).sub(&MotivicClass::l_pow(k - 1));
            assert_eq!(z.coeff(k as usize), &expect);
        }
    }

    #[test]
    fn statement_two_coefficient() {
        let m = MotivicClass::bgl(1).unwrap();
        let z = binomial_series(&m, 2, &zeta()).unwrap();
        assert_eq!(z.coeff(1), &m);
        let num = MotivicClass::from_laurent(crate::IntLaurent::from_terms([(3, -1), (2, 1), (1, 1)]));
        let expect = num.try_div(&MotivicClass::gl(2).unwrap()).unwrap();
        assert_eq!(z.coeff(2), &expect);
    }

    #[test]
    fn opposite_differs_from_zeta() {
        let one = MotivicClass::one();
        let op = Opposite(zeta());
        let s = op.lambda(&one, 3).unwrap();
        assert_eq!(s, TruncatedSeries::one_plus_t(&one, 3));
    }

    #[test]
    fn perturbed_provider_breaks_additivity() {
        let p = Perturbed(zeta());
        let one = MotivicClass::one();
        let two = MotivicClass::integer(2);
        let l2 = p.lambda(&two, 2).unwrap();
        let l1sq = p.lambda(&one, 2).unwrap().mul(&p.lambda(&one, 2).unwrap()).unwrap();
        assert_ne!(l2, l1sq);
    }

    #[test]
    fn axioms_hold_for_a_simple_sample() {
        let l = MotivicClass::l();
        let sample = AxiomSample {
            a: series(&[MotivicClass::one(), l.clone(), MotivicClass::integer(2), MotivicClass::zero()]),
            b: TruncatedSeries::one_plus_t(&l, 3),
            m: MotivicClass::bgl(1).unwrap(),
            n: l.add(&MotivicClass::integer(-1)),
            k: 2,
        };
        let report = axiom_suite(&zeta(), std::slice::from_ref(&sample), 3).unwrap();
        assert!(report.passed(), "{report}");
        let report = axiom_suite(&Perturbed(zeta()), &[sample], 3).unwrap();
        assert!(!report.passed());
    }
}
