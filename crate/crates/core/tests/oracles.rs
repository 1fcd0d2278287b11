//! Independent cross-checks of the engine against computations that share no
//! code with it: Newton's identities for the Adams operations evaluated in `Q`,
//! and brute-force point counts over small finite fields.

use motzeta_core::algebra::{integer, ExactRational, IntLaurent};
use motzeta_core::power::{binomial_series, KapranovZeta};
use motzeta_core::zeta::zeta_class;
use motzeta_core::{DenomForm, MotivicClass};
use num_traits::{One, Zero};

/// `c_k` from `k c_k = Σ_{r=1}^{k} ψ^r(a) c_{k-r}` where `ψ^r` sends `L ↦ L^r`,
/// evaluated at `L = t`.
fn newton_coefficients(a: &MotivicClass, t: &ExactRational, order: usize) -> Vec<ExactRational> {
    let psi: Vec<ExactRational> = (1..=order)
        .map(|r| a.eval(&num_traits::pow(t.clone(), r)).unwrap())
        .collect();
    let mut c = vec![ExactRational::one()];
    for k in 1..=order {
        let s = (1..=k).fold(ExactRational::zero(), |acc, r| acc + &psi[r - 1] * &c[k - r]);
        c.push(s / integer(k as i64));
    }
    c
}

fn assert_newton(a: &MotivicClass, order: usize) {
    let z = zeta_class(a, order).unwrap();
    for t in [2, 3, 5] {
        let t = integer(t);
        let expect = newton_coefficients(a, &t, order);
        for k in 0..=order {
            assert_eq!(z.coeff(k).eval(&t).unwrap(), expect[k], "a = {a}, L = {t}, T^{k}");
        }
    }
}

fn class(num: &[(i64, i64)], l_exp: u32, factors: &[u32]) -> MotivicClass {
    MotivicClass::new(
        IntLaurent::from_terms(num.iter().copied()),
        DenomForm::new(l_exp, factors.to_vec()).unwrap(),
    )
}

#[test]
fn newton_identities_for_stack_classes() {
    assert_newton(&MotivicClass::bgl(1).unwrap(), 6);
    assert_newton(&MotivicClass::bgl(2).unwrap(), 5);
    assert_newton(&class(&[(0, 1), (1, 1)], 0, &[1]), 5);
    assert_newton(&class(&[(2, 1), (0, -3)], 1, &[1, 2]), 5);
    assert_newton(&class(&[(0, -2)], 0, &[3]), 5);
    assert_newton(&class(&[(1, 1)], 0, &[1, 1, 2]), 4);
    assert_newton(&class(&[(0, 1), (3, -1)], 2, &[]), 5);
}

fn gl_count(n: usize, p: u64) -> u64 {
    let mut count = 0;
    let cells = n * n;
    let total = p.pow(cells as u32);
    for code in 0..total {
        let mut m = vec![vec![0i64; n]; n];
        let mut c = code;
        for cell in 0..cells {
            m[cell / n][cell % n] = (c % p) as i64;
            c /= p;
        }
        if rank_mod_p(m, p as i64) == n {
            count += 1;
        }
    }
    count
}

fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] % p != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = (1..p).find(|x| (m[rank][col] * x).rem_euclid(p) == 1).unwrap();
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = (m[r][col] * inv).rem_euclid(p);
                for c in 0..cols {
                    m[r][c] = (m[r][c] - f * m[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn general_linear_groups_over_small_fields() {
    for (n, p) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let counted = gl_count(n, p);
        let class = MotivicClass::gl(n as i64).unwrap();
        assert_eq!(class.eval(&integer(p as i64)).unwrap(), integer(counted as i64), "GL({n}, F_{p})");
    }
    assert_eq!(gl_count(2, 2), 6);
}

/// Number of 2-dimensional subspaces of `F_p^4`: count pairs of independent
/// vectors and divide by `|GL(2, F_p)|`.
fn two_planes_in_four_space(p: i64) -> i64 {
    let vectors: Vec<Vec<i64>> = (0..p.pow(4))
        .map(|c| (0..4).map(|i| (c / p.pow(i)) % p).collect())
        .collect();
    let mut pairs = 0;
    for a in &vectors {
        for b in &vectors {
            if rank_mod_p(vec![a.clone(), b.clone()], p) == 2 {
                pairs += 1;
            }
        }
    }
    pairs / gl_count(2, p as u64) as i64
}

#[test]
fn grassmannian_point_counts() {
    for p in [2, 3] {
        let gr = MotivicClass::grassmannian(2, 4).unwrap();
        assert_eq!(gr.eval(&integer(p)).unwrap(), integer(two_planes_in_four_space(p)));
    }
    assert_eq!(two_planes_in_four_space(2), 35);
}

/// Monic polynomials over `F_p` of degree `k` with no repeated factor, by
/// testing divisibility by `g²` for every monic `g` of degree ≥ 1.
fn squarefree_monic(p: i64, k: usize) -> i64 {
    fn monics(p: i64, deg: usize) -> Vec<Vec<i64>> {
        (0..p.pow(deg as u32))
            .map(|c| {
                let mut v: Vec<i64> = (0..deg).map(|i| (c / p.pow(i as u32)) % p).collect();
                v.push(1);
                v
            })
            .collect()
    }
    fn mul(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }
    fn divides(d: &[i64], f: &[i64], p: i64) -> bool {
        // d monic
        let mut r = f.to_vec();
        while r.len() >= d.len() {
            let lead = *r.last().unwrap();
            let shift = r.len() - d.len();
            for (i, c) in d.iter().enumerate() {
                r[shift + i] = (r[shift + i] - lead * c).rem_euclid(p);
            }
            r.pop();
        }
        r.iter().all(|&c| c == 0)
    }
    let squares: Vec<Vec<i64>> = (1..=k / 2)
        .flat_map(|d| monics(p, d))
        .map(|g| mul(&g, &g, p))
        .collect();
    monics(p, k)
        .iter()
        .filter(|f| !squares.iter().any(|s| divides(s, f, p)))
        .count() as i64
}

#[test]
fn configuration_series_counts_squarefree_polynomials() {
    let series = binomial_series(&MotivicClass::l(), 4, &KapranovZeta::default()).unwrap();
    for p in [2, 3] {
        for k in 1..=4 {
            let counted = squarefree_monic(p, k);
            assert_eq!(series.coeff(k).eval(&integer(p)).unwrap(), integer(counted), "F_{p}, degree {k}");
        }
    }
}

#[test]
fn frozen_classifying_stack_coefficients() {
    let z = zeta_class(&MotivicClass::bgl(1).unwrap(), 3).unwrap();
    let rendered: Vec<String> = z.coeffs().iter().map(ToString::to_string).collect();
    assert_eq!(
        rendered,
        [
            "1",
            "1 / (L - 1)",
            "L / ((L - 1) * (L^2 - 1))",
            "L^3 / ((L - 1) * (L^2 - 1) * (L^3 - 1))",
        ]
    );
}
