//! The rational functions `R_k(q_1, …, q_k)`: generating sums of
//! `q_1^{i_1} ⋯ q_k^{i_k}` over tuples of pairwise distinct exponents.
//!
//! The closed form splits the sum by the ordering of the exponents: the
//! ordering `i_{σ(1)} > ⋯ > i_{σ(k)} ≥ 0` contributes
//! `q_{σ(1)}^{k-1} q_{σ(2)}^{k-2} ⋯ q_{σ(k-1)} / ∏_j (1 - q_{σ(1)} ⋯ q_{σ(j)})`.
//! `R_{n_1, …, n_s}` (strictly increasing exponents inside each block) is
//! `R_k` on the block-repeated arguments divided by `∏ n_j!`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use super::ZetaConfig;
use crate::algebra::MultiPoly;
use crate::class::MotivicClass;
use crate::error::{domain, resource, Error, Result};

/// Largest `k` accepted by the brute-force Taylor oracles.
const ORACLE_MAX_K: usize = 4;
/// Largest total degree accepted by the brute-force Taylor oracles.
const ORACLE_MAX_DEGREE: u32 = 12;

/// Rearranges `seq` into the next lexicographic permutation; false at the last one.
/// Repeated entries yield each distinct arrangement once.
fn next_permutation(seq: &mut [usize]) -> bool {
    let Some(i) = seq.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = seq.iter().rposition(|&x| x > seq[i]).unwrap();
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn ordering_term(order: &[usize], reps: &[MotivicClass]) -> Result<MotivicClass> {
    let k = order.len();
    let mut num = MotivicClass::one();
    for (pos, &g) in order.iter().enumerate() {
        num = num.mul(&crate::ring::Ring::pow(&reps[g], (k - 1 - pos) as u32));
    }
    let mut partial = MotivicClass::one();
    let mut term = num;
    for &g in order {
        partial = partial.mul(&reps[g]);
        let factor = MotivicClass::one().sub(&partial);
        let inv = factor.try_inv().map_err(|_| {
            Error::Domain(format!(
                "R-function denominator 1 - ({partial}) is not invertible in the stack ring"
            ))
        })?;
        term = term.mul(&inv);
    }
    Ok(term)
}

/// `R_k(args)` through the closed-form permutation sum.
///
/// Equal arguments are grouped, so each distinct ordering is evaluated once
/// and weighted by the number of permutations producing it.
pub fn r_closed(args: &[MotivicClass], cfg: &ZetaConfig) -> Result<MotivicClass> {
    let k = args.len();
    if k > cfg.cap_k {
        return resource(format!(
            "R_{k} needs a {k}!-term permutation sum; the cap is k = {}",
            cfg.cap_k
        ));
    }
    let mut reps: Vec<MotivicClass> = Vec::new();
    let mut seq = Vec::with_capacity(k);
    for a in args {
        let g = match reps.iter().position(|r| r == a) {
            Some(g) => g,
            None => {
                reps.push(a.clone());
                reps.len() - 1
            }
        };
        seq.push(g);
    }
    seq.sort_unstable();
    let weight = (0..reps.len())
        .map(|g| factorial(seq.iter().filter(|&&x| x == g).count()))
        .fold(BigInt::one(), |acc, f| acc * f);

    let mut total = MotivicClass::zero();
    loop {
        total = total.add(&ordering_term(&seq, &reps)?);
        if !next_permutation(&mut seq) {
            break;
        }
    }
    Ok(total.scale(&weight))
}

/// `R_{n_1, …, n_s}(args)`: `R_{Σ n_j}` on block-repeated arguments divided by `∏ n_j!`.
pub fn r_multi(mults: &[u32], args: &[MotivicClass], cfg: &ZetaConfig) -> Result<MotivicClass> {
    if mults.len() != args.len() {
        return domain(format!(
            "R_(n_1..n_s) got {} multiplicities but {} arguments",
            mults.len(),
            args.len()
        ));
    }
    if mults.contains(&0) {
        return domain("block multiplicities must be positive");
    }
    let total: usize = mults.iter().map(|&n| n as usize).sum();
    if total > cfg.cap_k {
        return resource(format!(
            "R with Σ n_j = {total} exceeds the cap k = {}",
            cfg.cap_k
        ));
    }
    let repeated: Vec<MotivicClass> = mults
        .iter()
        .zip(args)
        .flat_map(|(&n, a)| std::iter::repeat_n(a.clone(), n as usize))
        .collect();
    let full = r_closed(&repeated, cfg)?;
    let divisor = mults
        .iter()
        .fold(BigInt::one(), |acc, &n| acc * factorial(n as usize));
    full.div_int_exact(&divisor).ok_or_else(|| {
        Error::Consistency(format!(
            "R_{total} on repeated arguments ({full}) is not divisible by {divisor}"
        ))
    })
}

/// Whether the closed form is evaluated faithfully or with a planted error
/// (used as a negative control by the verification scenarios).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormVariant {
    Exact,
    /// Negates the summand of the identity ordering.
    FlippedSign,
}

/// `1 + m + m² + …` truncated at total degree `cap`.
fn geometric_truncated(m: &MultiPoly, cap: u32) -> MultiPoly {
    let deg = m.total_degree().unwrap_or(0).max(1);
    let mut acc = MultiPoly::one(m.vars().clone());
    let mut power = acc.clone();
    for _ in 0..cap / deg {
        power = power.mul_truncated(m, Some(cap));
        acc = acc.add(&power);
    }
    acc
}

/// Taylor expansion to total degree `cap` of the closed form of
/// `R_k(x_{assign[0]}, …, x_{assign[k-1]})`, in the variables `vars`.
///
/// With `assign = [0, 1, …, k-1]` this is `R_k` itself; repeated indices
/// give the block-repeated argument lists behind `R_{n_1, …, n_s}`.
pub fn closed_form_taylor(
    assign: &[usize],
    vars: Arc<[String]>,
    cap: u32,
    variant: ClosedFormVariant,
) -> Result<MultiPoly> {
    let k = assign.len();
    if k > ORACLE_MAX_K + 2 {
        return resource(format!("closed-form Taylor expansion limited to k ≤ {}", ORACLE_MAX_K + 2));
    }
    if assign.iter().any(|&i| i >= vars.len()) {
        return domain("argument assignment refers to a missing variable");
    }
    let x: Vec<MultiPoly> = (0..vars.len()).map(|i| MultiPoly::var(vars.clone(), i)).collect();
    let mut total = MultiPoly::zero(vars.clone());
    let mut perm: Vec<usize> = (0..k).collect();
    let mut first = true;
    loop {
        let mut term = MultiPoly::one(vars.clone());
        for (pos, &i) in perm.iter().enumerate() {
            term = term.mul_truncated(&x[assign[i]].pow((k - 1 - pos) as u32), Some(cap));
        }
        let mut partial = MultiPoly::one(vars.clone());
        for &i in &perm {
            partial = partial.mul(&x[assign[i]]);
            term = term.mul_truncated(&geometric_truncated(&partial, cap), Some(cap));
        }
        if first && variant == ClosedFormVariant::FlippedSign {
            term = term.neg();
        }
        first = false;
        total = total.add(&term);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(total)
}

/// Variables `q1, …, qk`.
pub fn q_vars(k: usize) -> Arc<[String]> {
    let names: Vec<String> = (1..=k).map(|i| format!("q{i}")).collect();
    MultiPoly::var_names(&names)
}

/// Brute-force Taylor expansion of `R_k` to total degree `degree_cap`:
/// the sum of `q_1^{i_1} ⋯ q_k^{i_k}` over pairwise distinct `i_j ≥ 0`.
pub fn r_taylor_oracle(k: usize, degree_cap: u32) -> Result<MultiPoly> {
    if k == 0 {
        return domain("R_k needs k ≥ 1");
    }
    if k > ORACLE_MAX_K || degree_cap > ORACLE_MAX_DEGREE {
        return resource(format!(
            "Taylor oracle limited to k ≤ {ORACLE_MAX_K}, degree ≤ {ORACLE_MAX_DEGREE}"
        ));
    }
    fn go(pos: usize, left: u32, exps: &mut Vec<u32>, vars: &Arc<[String]>, acc: &mut MultiPoly) {
        if pos == vars.len() {
            *acc = acc.add(&MultiPoly::monomial(vars.clone(), exps.clone(), 1));
            return;
        }
        for i in 0..=left {
            if exps.contains(&i) {
                continue;
            }
            exps.push(i);
            go(pos + 1, left - i, exps, vars, acc);
            exps.pop();
        }
    }
    let vars = q_vars(k);
    let mut acc = MultiPoly::zero(vars.clone());
    go(0, degree_cap, &mut Vec::new(), &vars, &mut acc);
    Ok(acc)
}

/// Brute-force expansion of `R_{n_1, …, n_s}` straight from its definition:
/// block `j` takes `n_j` strictly increasing exponents of `q_j`, and all
/// exponents across blocks are pairwise distinct.
pub fn r_multi_definition_oracle(mults: &[u32], degree_cap: u32) -> Result<MultiPoly> {
    let total: u32 = mults.iter().sum();
    if mults.is_empty() || mults.contains(&0) {
        return domain("block multiplicities must be positive");
    }
    if total as usize > ORACLE_MAX_K || degree_cap > ORACLE_MAX_DEGREE {
        return resource(format!(
            "definition oracle limited to Σ n_j ≤ {ORACLE_MAX_K}, degree ≤ {ORACLE_MAX_DEGREE}"
        ));
    }
    struct Walk<'a> {
        mults: &'a [u32],
        vars: Arc<[String]>,
        used: Vec<u32>,
        exps: Vec<u32>,
        acc: MultiPoly,
    }
    fn go(w: &mut Walk<'_>, block: usize, filled: u32, min: u32, left: u32) {
        if block == w.mults.len() {
            w.acc = w.acc.add(&MultiPoly::monomial(w.vars.clone(), w.exps.clone(), 1));
            return;
        }
        if filled == w.mults[block] {
            go(w, block + 1, 0, 0, left);
            return;
        }
        for i in min..=left {
            if w.used.contains(&i) {
                continue;
            }
            w.used.push(i);
            w.exps[block] += i;
            go(w, block, filled + 1, i + 1, left - i);
            w.exps[block] -= i;
            w.used.pop();
        }
    }
    let vars = q_vars(mults.len());
    let mut walk = Walk {
        mults,
        vars: vars.clone(),
        used: Vec::new(),
        exps: vec![0; mults.len()],
        acc: MultiPoly::zero(vars),
    };
    go(&mut walk, 0, 0, 0, degree_cap);
    Ok(walk.acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> MotivicClass {
        MotivicClass::q_pow(n)
    }

    fn inv1mq(n: i64) -> MotivicClass {
        MotivicClass::inv_one_minus_q_pow(n).unwrap()
    }

    #[test]
    fn distinct_arrangements() {
        let mut seq = vec![0, 0, 1];
        let mut seen = vec![seq.clone()];
        while next_permutation(&mut seq) {
            seen.push(seq.clone());
        }
        assert_eq!(seen, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn r1_is_geometric() {
        let cfg = ZetaConfig::default();
        assert_eq!(r_closed(&[q(1)], &cfg).unwrap(), inv1mq(1));
        assert_eq!(r_multi(&[1], &[q(3)], &cfg).unwrap(), inv1mq(3));
    }

    #[test]
    fn r2_closed_form() {
        let cfg = ZetaConfig::default();
        let (a, b) = (q(1), q(2));
        // q1/((1-q1)(1-q1q2)) + q2/((1-q2)(1-q1q2))
        let expect = a
            .mul(&inv1mq(1))
            .mul(&inv1mq(3))
            .add(&b.mul(&inv1mq(2)).mul(&inv1mq(3)));
        assert_eq!(r_closed(&[a.clone(), b.clone()], &cfg).unwrap(), expect);
        assert_eq!(r_multi(&[1, 1], &[a.clone(), b.clone()], &cfg).unwrap(), expect);
    }

    #[test]
    fn r2_on_equal_arguments() {
        let cfg = ZetaConfig::default();
        // R_2(q, q) = 2q/((1-q)(1-q²)) and R_(2)(q) = q/((1-q)(1-q²))
        let base = q(1).mul(&inv1mq(1)).mul(&inv1mq(2));
        assert_eq!(r_closed(&[q(1), q(1)], &cfg).unwrap(), base.scale(&2.into()));
        assert_eq!(r_multi(&[2], &[q(1)], &cfg).unwrap(), base);
    }

    #[test]
    fn caps() {
        let cfg = ZetaConfig { cap_k: 2 };
        assert!(matches!(
            r_closed(&[q(1), q(2), q(3)], &cfg),
            Err(Error::Resource(_))
        ));
        assert!(matches!(r_multi(&[3], &[q(1)], &cfg), Err(Error::Resource(_))));
        assert!(matches!(r_taylor_oracle(5, 3), Err(Error::Resource(_))));
        assert!(matches!(r_taylor_oracle(2, 13), Err(Error::Resource(_))));
    }

    #[test]
    fn non_invertible_argument() {
        // 1 - 2 = -1 is a unit, but 1 - (1 + L) = -L is too; 1 - 3 = -2 is not.
        let cfg = ZetaConfig::default();
        assert!(matches!(
            r_closed(&[MotivicClass::integer(3)], &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn taylor_oracle_small_cases() {
        let p = r_taylor_oracle(1, 3).unwrap();
        assert_eq!(p.to_string(), "q1^3 + q1^2 + q1 + 1");
        let p2 = r_taylor_oracle(2, 2).unwrap();
        assert_eq!(p2.to_string(), "q1^2 + q1 + q2^2 + q2");
    }

    #[test]
    fn closed_form_expansion_matches_oracle_at_k2() {
        let vars = q_vars(2);
        let closed = closed_form_taylor(&[0, 1], vars, 6, ClosedFormVariant::Exact).unwrap();
        assert_eq!(closed, r_taylor_oracle(2, 6).unwrap());
    }
}
