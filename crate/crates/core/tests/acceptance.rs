//! Acceptance criteria. Each prints one line: `[PASS|FAIL] <n> <title> (<ms> ms, budget <s> s)`.
//! Runs without the libtest harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use motzeta_core::hodge::{
    effectiveness_check_class, statement1_expected, statement1_reproduce, statement2_expected,
    Verdict,
};
use motzeta_core::power::{binomial_series, KapranovZeta, LambdaProvider};
use motzeta_core::verify::{
    funceq_bases, verify_axioms, verify_fact1, verify_fact2, verify_funceq, verify_grassmannian,
    verify_numeric, verify_representation, verify_sym_gl1, verify_zeta_some, AxiomRing,
    VerificationReport,
};
use motzeta_core::zeta::{zeta_class, ClosedFormVariant};
use motzeta_core::{MotivicClass, MultiPoly, Result, ZetaConfig};

struct Outcome {
    passed: bool,
    note: String,
}

fn from_reports(reports: Vec<VerificationReport>) -> Outcome {
    match reports.iter().find(|r| !r.passed) {
        None => Outcome {
            passed: true,
            note: format!("{} checks", reports.len()),
        },
        Some(r) => Outcome {
            passed: false,
            note: r.to_string(),
        },
    }
}

fn fail(note: impl Into<String>) -> Outcome {
    Outcome {
        passed: false,
        note: note.into(),
    }
}

fn zeta_some() -> Result<Outcome> {
    let cfg = ZetaConfig::default();
    let mut reports = Vec::new();
    for m in 0..=2 {
        for n in 1..=3 {
            reports.push(verify_zeta_some(m, n, 6, &cfg)?);
        }
    }
    Ok(from_reports(reports))
}

fn sym_gl1() -> Result<Outcome> {
    Ok(from_reports(vec![verify_sym_gl1(5, &ZetaConfig::default())?]))
}

fn statement_two() -> Result<Outcome> {
    let m = MotivicClass::bgl(1)?;
    let zeta = KapranovZeta::default();
    let by_power = binomial_series(&m, 2, &zeta)?;
    let z = zeta.lambda(&m, 2)?;
    let by_ratio = z.mul(&z.substitute_tk(2)?.inv()?)?;
    let expect = statement2_expected();
    if !by_power.coeff(2).class_eq(&expect) {
        return Ok(fail(format!("power route T^2 = {}", by_power.coeff(2))));
    }
    if !by_ratio.coeff(2).class_eq(&expect) {
        return Ok(fail(format!("ratio route T^2 = {}", by_ratio.coeff(2))));
    }
    let check = effectiveness_check_class(by_power.coeff(2));
    if check.verdict != Verdict::NotEffective {
        return Ok(fail(format!("verdict {}", check.verdict)));
    }
    Ok(Outcome {
        passed: true,
        note: format!("T^2 = {}, top part {}", by_power.coeff(2), check.top_part),
    })
}

fn statement_one() -> Result<Outcome> {
    let r = statement1_reproduce();
    let t2 = r.series.coeff(2);
    if *t2 != statement1_expected() {
        return Ok(fail(format!("T^2 = {t2}")));
    }
    let witness = MultiPoly::from_terms(MultiPoly::hd_vars(), [(vec![2, 1], -1), (vec![1, 2], -1)]);
    if r.check.verdict != Verdict::NotEffective || r.check.top_part != witness {
        return Ok(fail(format!("verdict {} with top part {}", r.check.verdict, r.check.top_part)));
    }
    Ok(Outcome {
        passed: true,
        note: format!("T^2 = {t2}, top part {}", r.check.top_part),
    })
}

fn fact_one() -> Result<Outcome> {
    let reports = (1..=3)
        .map(|k| verify_fact1(k, 8, ClosedFormVariant::Exact))
        .collect::<Result<Vec<_>>>()?;
    let control = verify_fact1(2, 8, ClosedFormVariant::FlippedSign)?;
    if control.passed {
        return Ok(fail("flipped-sign control was not detected"));
    }
    Ok(from_reports(reports))
}

fn fact_two() -> Result<Outcome> {
    let reports = [vec![2], vec![1, 1], vec![2, 1]]
        .iter()
        .map(|m| verify_fact2(m, 8))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_reports(reports))
}

fn funceq() -> Result<Outcome> {
    let cfg = ZetaConfig::default();
    let mut reports = Vec::new();
    for b in funceq_bases() {
        for m in 0..=1 {
            for n in 1..=2 {
                reports.push(verify_funceq(&b, m, n, 6, &cfg)?);
            }
        }
    }
    Ok(from_reports(reports))
}

fn axioms() -> Result<Outcome> {
    let cfg = ZetaConfig::default();
    let reports = vec![
        verify_axioms(AxiomRing::Motivic, 5, 20, 0, false, &cfg)?,
        verify_axioms(AxiomRing::Hd, 5, 20, 0, false, &cfg)?,
    ];
    for ring in [AxiomRing::Motivic, AxiomRing::Hd] {
        if verify_axioms(ring, 5, 20, 0, true, &cfg)?.passed {
            return Ok(fail(format!("perturbed provider passed on the {} ring", ring.name())));
        }
    }
    let mut out = from_reports(reports);
    out.note.push_str(", both negative controls fail");
    Ok(out)
}

fn representation() -> Result<Outcome> {
    let cfg = ZetaConfig::default();
    // (1 + q)/(1 - q²) vs 1/(1 - q) to order 6, then ζ_{La} = ζ_a(LT) on 10 samples
    let one_plus_q = MotivicClass::one().add(&MotivicClass::q());
    let a = one_plus_q.mul(&MotivicClass::inv_one_minus_q_pow(2)?);
    let b = MotivicClass::inv_one_minus_q_pow(1)?;
    if zeta_class(&a, 6)? != zeta_class(&b, 6)? {
        return Ok(fail("ζ of (1+q)/(1-q^2) differs from ζ of 1/(1-q)"));
    }
    Ok(from_reports(vec![verify_representation(0, 10, 5, &cfg)?]))
}

fn grassmannian() -> Result<Outcome> {
    let reports = (0..=6)
        .map(|n| verify_grassmannian(n, 5))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_reports(reports))
}

fn numeric() -> Result<Outcome> {
    Ok(from_reports(vec![verify_numeric(&[2, 3, 5], 6, &ZetaConfig::default())?]))
}

type Criterion = (u32, &'static str, u64, fn() -> Result<Outcome>);

const CRITERIA: [Criterion; 11] = [
    (1, "zeta of q^m/(1-q^n) product formula", 5, zeta_some),
    (2, "symmetric powers of BGL(1)", 5, sym_gl1),
    (3, "(1+T)^(1/(L-1)) second coefficient and non-effectiveness", 2, statement_two),
    (4, "opposite structure on the elliptic curve", 1, statement_one),
    (5, "R_k closed form vs brute-force Taylor expansion", 10, fact_one),
    (6, "block R-functions vs definition-side enumeration", 10, fact_two),
    (7, "functional equation", 10, funceq),
    (8, "power-structure axioms with negative controls", 20, axioms),
    (9, "representation independence and L-scaling", 5, representation),
    (10, "finite Grassmannians and stabilization", 5, grassmannian),
    (11, "numeric specialization at L = 2, 3, 5", 2, numeric),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for (id, title, budget, check) in CRITERIA {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (passed, note) = match result {
            Ok(o) => (o.passed, o.note),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_budget = elapsed <= Duration::from_secs(budget);
        let ok = passed && in_budget;
        if !ok {
            failures += 1;
        }
        println!(
            "[{}] {id:>2} {title} ({} ms, budget {budget} s){}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_millis(),
            if in_budget { String::new() } else { " over budget".into() },
        );
        if !ok || std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
            println!("     {note}");
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
