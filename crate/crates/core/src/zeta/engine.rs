use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{partitions, r_multi, FormalSigma, ZetaConfig};
use crate::algebra::IntLaurent;
use crate::class::{DenomForm, MotivicClass};
use crate::error::{domain, Result};
use crate::ring::Ring;
use crate::series::TruncatedSeries;

/// `C(n, k)` for a nonnegative big integer `n`.
fn binomial(n: &BigInt, k: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// `ζ_b(T)` for a Laurent polynomial `b = Σ c_s L^s`:
/// `∏_s (1 - L^s T)^{-c_s}`.
pub fn zeta_base(b: &IntLaurent, order: usize) -> TruncatedSeries<MotivicClass> {
    let mut acc = TruncatedSeries::one(&IntLaurent::one(), order);
    for (s, c) in b.terms() {
        let coeffs = (0..=order)
            .map(|k| {
                let mag = if c.is_positive() {
                    binomial(&(c + k - 1), k)
                } else {
                    let b = binomial(&c.abs(), k);
                    if k % 2 == 1 {
                        -b
                    } else {
                        b
                    }
                };
                IntLaurent::monomial(mag, s * k as i64)
            })
            .collect();
        let factor = TruncatedSeries::new(coeffs).expect("nonempty");
        acc = acc.mul(&factor).expect("single coefficient ring");
    }
    acc.map(|p| MotivicClass::from_laurent(p.clone()))
}

/// The layer formula shared by the concrete and the formal variants.
///
/// `sigma[j-1]` is `σ^j b`; the result is `ζ_a` for `a = b q^m / (1 - q^n)`.
fn layer<R: Ring>(
    sigma: &[R],
    one: &R,
    m: i64,
    n: i64,
    order: usize,
    embed: &dyn Fn(MotivicClass) -> R,
    cfg: &ZetaConfig,
) -> Result<TruncatedSeries<R>> {
    if n == 0 {
        return domain("layer needs n ≠ 0: 1 - q^0 is not invertible");
    }
    if sigma.len() < order {
        return domain(format!(
            "need σ^1 b … σ^{order} b, got only {} values",
            sigma.len()
        ));
    }
    // 1/(1 - q^{-n'}) = -q^{n'}/(1 - q^{n'}), so b ↦ -b and m ↦ m + n'.
    // ζ_{-b} = ζ_b^{-1} by additivity.
    let (sigma, m, n): (Vec<R>, i64, i64) = if n < 0 {
        let mut coeffs = vec![one.clone()];
        coeffs.extend(sigma[..order].iter().cloned());
        let inv = TruncatedSeries::new(coeffs)?.inv()?;
        (inv.coeffs()[1..].to_vec(), m - n, -n)
    } else {
        (sigma[..order].to_vec(), m, n)
    };

    let mut coeffs = vec![one.clone()];
    for k in 1..=order {
        let mut acc = one.zero_like();
        for p in partitions(k as u32) {
            let blocks: Vec<(usize, u32)> = p
                .multiplicities()
                .iter()
                .enumerate()
                .filter(|(_, &kj)| kj > 0)
                .map(|(j, &kj)| (j + 1, kj))
                .collect();
            if blocks.iter().any(|&(j, _)| sigma[j - 1].is_zero()) {
                continue;
            }
            // R_{k_1, …, k_s}(q^n, q^{2n}, …, q^{sn}) restricted to nonempty blocks
            let mults: Vec<u32> = blocks.iter().map(|&(_, kj)| kj).collect();
            let args: Vec<MotivicClass> = blocks
                .iter()
                .map(|&(j, _)| MotivicClass::q_pow(n * j as i64))
                .collect();
            let mut term = embed(r_multi(&mults, &args, cfg)?);
            for &(j, kj) in &blocks {
                term = term.mul(&sigma[j - 1].pow(kj));
            }
            acc = acc.add(&term);
        }
        coeffs.push(acc.mul(&embed(MotivicClass::q_pow(m * k as i64))));
    }
    TruncatedSeries::new(coeffs)
}

/// `ζ_a(T)` for `a = b q^m / (1 - q^n)` from the symmetric powers
/// `sigma_b = [σ^1 b, σ^2 b, …]`.
pub fn zeta_prop_layer(
    sigma_b: &[MotivicClass],
    m: i64,
    n: i64,
    order: usize,
    cfg: &ZetaConfig,
) -> Result<TruncatedSeries<MotivicClass>> {
    layer(sigma_b, &MotivicClass::one(), m, n, order, &|c| c, cfg)
}

/// The layer formula with `σ^j b` left as formal symbols `σ_1 … σ_budget`.
pub fn zeta_prop_formal(
    budget: usize,
    m: i64,
    n: i64,
    order: usize,
    cfg: &ZetaConfig,
) -> Result<TruncatedSeries<FormalSigma>> {
    if budget < order {
        return domain(format!("symbol budget {budget} is below the order {order}"));
    }
    let sigma = (1..=order)
        .map(|j| FormalSigma::symbol(j, budget))
        .collect::<Result<Vec<_>>>()?;
    let one = FormalSigma::constant(MotivicClass::one(), budget);
    layer(&sigma, &one, m, n, order, &|c| FormalSigma::constant(c, budget), cfg)
}

/// Kapranov zeta function of an arbitrary class, with the default caps.
pub fn zeta_class(a: &MotivicClass, order: usize) -> Result<TruncatedSeries<MotivicClass>> {
    zeta_class_with(a, order, &ZetaConfig::default())
}

/// Kapranov zeta function of an arbitrary class.
///
/// The largest denominator factor is peeled first: with `a = num / (L^e ∏ (L^{n_i} - 1))`
/// and `n` the largest `n_i`, `a = b / (1 - q^n)` where `b` keeps the other
/// factors and absorbs `q^n` into its `L`-power.
pub fn zeta_class_with(
    a: &MotivicClass,
    order: usize,
    cfg: &ZetaConfig,
) -> Result<TruncatedSeries<MotivicClass>> {
    let a = a.normalize();
    if a.is_zero() {
        return Ok(TruncatedSeries::one(&MotivicClass::one(), order));
    }
    if let Some(p) = a.as_laurent() {
        return Ok(zeta_base(&p, order));
    }
    let factors = a.den().factors();
    let (&n, rest) = factors.split_last().expect("non-Laurent class has a factor");
    let b = MotivicClass::new(
        a.num().clone(),
        DenomForm::new(a.den().l_exp() + n, rest.to_vec())?,
    );
    let zb = zeta_class_with(&b, order, cfg)?;
    zeta_prop_layer(&zb.coeffs()[1..], 0, n as i64, order, cfg)
}

/// `σ^k a`, the `T^k` coefficient of `ζ_a(T)`.
pub fn sigma_power(a: &MotivicClass, k: usize, cfg: &ZetaConfig) -> Result<MotivicClass> {
    Ok(zeta_class_with(a, k, cfg)?.coeff(k).clone())
}

/// The opposite structure `(ζ_a(-T))^{-1}`.
pub fn zeta_opposite(
    a: &MotivicClass,
    order: usize,
    cfg: &ZetaConfig,
) -> Result<TruncatedSeries<MotivicClass>> {
    zeta_class_with(a, order, cfg)?.alternate().inv()
}
