//! Self-checks for the zeta engine: the functional equation that defines
//! `ζ_a` for `a = b q^m / (1 - q^n)`, and the infinite product
//! `∏_{i ≥ 0} ζ_b(q^{m+in} T)` expanded q-adically.

use serde_json::{json, Value};

use super::{zeta_class_with, ZetaConfig};
use crate::algebra::IntLaurent;
use crate::class::MotivicClass;
use crate::error::{domain, resource, Result};
use crate::series::TruncatedSeries;

pub const PSI_MAX_PREFIX: usize = 64;
pub const PSI_MAX_ORDER: usize = 8;
pub const PSI_MAX_DEGREE: i64 = 48;

#[derive(Clone, Debug)]
pub struct FuncEqReport {
    pub holds: bool,
    pub first_failure: Option<usize>,
    pub lhs: TruncatedSeries<MotivicClass>,
    pub rhs: TruncatedSeries<MotivicClass>,
}

impl FuncEqReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "first_failure": self.first_failure,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

/// Compares `ζ_a(T)` with `ζ_a(q^n T) · ζ_b(q^m T)` given both series.
pub fn funceq_compare(
    za: &TruncatedSeries<MotivicClass>,
    zb: &TruncatedSeries<MotivicClass>,
    m: i64,
    n: i64,
) -> Result<FuncEqReport> {
    let rhs = za
        .scale_t(&MotivicClass::q_pow(n))
        .mul(&zb.scale_t(&MotivicClass::q_pow(m)))?;
    let first_failure = za.first_difference(&rhs);
    Ok(FuncEqReport {
        holds: first_failure.is_none(),
        first_failure,
        lhs: za.clone(),
        rhs,
    })
}

/// Checks the functional equation for `a = b q^m / (1 - q^n)` to `order`.
pub fn funceq_check(
    a: &MotivicClass,
    b: &MotivicClass,
    m: i64,
    n: i64,
    order: usize,
    cfg: &ZetaConfig,
) -> Result<FuncEqReport> {
    if n <= 0 {
        return domain(format!("functional equation needs n > 0, got {n}"));
    }
    let expected = b
        .mul(&MotivicClass::q_pow(m))
        .mul(&MotivicClass::inv_one_minus_q_pow(n)?);
    if !a.class_eq(&expected) {
        return domain(format!("{a} is not ({b})·q^{m}/(1 - q^{n})"));
    }
    let za = zeta_class_with(a, order, cfg)?;
    let zb = zeta_class_with(b, order, cfg)?;
    funceq_compare(&za, &zb, m, n)
}

#[derive(Clone, Debug)]
pub struct PsiReport {
    /// `table[k]` is the `T^k` coefficient of the length-`I` prefix, a
    /// polynomial in `q` cut at `q_degree`.
    pub table: Vec<IntLaurent>,
    pub prefix: usize,
    pub q_degree: i64,
    /// Prefixes `I` and `I + 1` agree on every coefficient.
    pub stabilized: bool,
    /// `m + I·n > q_degree`, the sufficient condition for stabilization.
    pub threshold_met: bool,
    /// The table agrees with `ζ_a` for `a = b q^m / (1 - q^n)` expanded in `q`.
    pub matches_zeta: bool,
}

impl PsiReport {
    pub fn to_json(&self) -> Value {
        json!({
            "prefix": self.prefix,
            "q_degree": self.q_degree,
            "stabilized": self.stabilized,
            "threshold_met": self.threshold_met,
            "matches_zeta": self.matches_zeta,
            "table": self.table.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Product of `ζ_b(q^{m+in} T)` over `i < prefix`, coefficients expanded in `q`
/// to `work` and cut there.
fn psi_prefix(sigma: &[MotivicClass], m: i64, n: i64, prefix: usize, work: i64) -> Vec<IntLaurent> {
    let order = sigma.len() - 1;
    let mut acc: Vec<IntLaurent> = (0..=order)
        .map(|k| if k == 0 { IntLaurent::one() } else { IntLaurent::zero() })
        .collect();
    for i in 0..prefix as i64 {
        let step = m + i * n;
        let factor: Vec<IntLaurent> = sigma
            .iter()
            .enumerate()
            .map(|(j, s)| s.mul(&MotivicClass::q_pow(step * j as i64)).q_expansion(work))
            .collect();
        let mut next = vec![IntLaurent::zero(); order + 1];
        for (a, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in factor.iter().enumerate().take(order + 1 - a) {
                next[a + b] = next[a + b].add(&x.mul(y).truncate_above(work));
            }
        }
        acc = next;
    }
    acc
}

/// Expands `∏_{i < prefix} ζ_b(q^{m+in} T)` q-adically and compares it with
/// the next prefix and with `ζ_a`.
pub fn psi_prefix_oracle(
    b: &MotivicClass,
    m: i64,
    n: i64,
    prefix: usize,
    order: usize,
    q_degree: i64,
    cfg: &ZetaConfig,
) -> Result<PsiReport> {
    if n <= 0 {
        return domain(format!("product oracle needs n > 0, got {n}"));
    }
    if prefix == 0 {
        return domain("prefix length must be at least 1");
    }
    if prefix > PSI_MAX_PREFIX || order > PSI_MAX_ORDER || q_degree > PSI_MAX_DEGREE {
        return resource(format!(
            "product oracle caps are I ≤ {PSI_MAX_PREFIX}, N ≤ {PSI_MAX_ORDER}, D ≤ {PSI_MAX_DEGREE}"
        ));
    }
    let zb = zeta_class_with(b, order, cfg)?;
    let sigma = zb.coeffs();

    // Coefficients may carry negative q-powers; a T^k term multiplies at most
    // k nonconstant factors, so this much slack keeps degree ≤ D exact.
    let vmin = sigma
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(j, s)| {
            let shifted = s.mul(&MotivicClass::q_pow(m * j as i64));
            (!shifted.is_zero()).then(|| q_valuation(&shifted))
        })
        .min()
        .unwrap_or(0)
        .min(0);
    let work = q_degree - vmin * order as i64;

    let cut = |t: Vec<IntLaurent>| -> Vec<IntLaurent> {
        t.into_iter().map(|p| p.truncate_above(q_degree)).collect()
    };
    let table = cut(psi_prefix(sigma, m, n, prefix, work));
    let next = cut(psi_prefix(sigma, m, n, prefix + 1, work));

    let a = b
        .mul(&MotivicClass::q_pow(m))
        .mul(&MotivicClass::inv_one_minus_q_pow(n)?);
    let za = zeta_class_with(&a, order, cfg)?;
    let expanded: Vec<IntLaurent> = za.coeffs().iter().map(|c| c.q_expansion(q_degree)).collect();

    Ok(PsiReport {
        stabilized: table == next,
        threshold_met: m + prefix as i64 * n > q_degree,
        matches_zeta: table == expanded,
        table,
        prefix,
        q_degree,
    })
}

/// Lowest power of `q` in the expansion of a nonzero class.
fn q_valuation(c: &MotivicClass) -> i64 {
    -c.num().max_deg().expect("nonzero") + c.den().l_exp() as i64 + c.den().factors().iter().map(|&n| n as i64).sum::<i64>()
}
