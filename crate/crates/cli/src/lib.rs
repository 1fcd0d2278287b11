//! Command-line front end: expression parsing, elaboration and the
//! `motzeta` subcommands.
//!
//! Exit codes: 0 success or verification pass, 1 verification failure,
//! 2 parse/elaboration/usage error, 3 domain error, 4 resource cap.

pub mod elaborate;
pub mod syntax;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use motzeta_core::hodge::{
    effectiveness_check_class, effectiveness_check_poly, hd_opposite, hd_zeta,
};
use motzeta_core::verify::{
    default_suite, verify_axioms, verify_fact1, verify_fact2, verify_funceq, verify_grassmannian,
    verify_numeric, verify_psi, verify_representation, verify_statement1, verify_statement2,
    verify_sym_gl1, verify_zeta_some, AxiomRing, VerificationReport,
};
use motzeta_core::power::{power, KapranovZeta};
use motzeta_core::zeta::{sigma_power, zeta_class_with, zeta_opposite, ClosedFormVariant};
use motzeta_core::{Error as CoreError, ExactRational, Ring, TruncatedSeries, ZetaConfig};
use serde_json::{json, Value};

pub use elaborate::CliError;
use elaborate::{mentions_hd_vars, parse_class, parse_hd_poly, series};

#[derive(Debug, Parser)]
#[command(name = "motzeta", version, about = "Exact Kapranov zeta functions and power structures on classes of stacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized verification scenarios.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest k for which R_k is expanded through its permutation sum.
    #[arg(long, global = true, default_value_t = 8)]
    pub cap_k: usize,
    /// Largest accepted series order (T-degree).
    #[arg(long, global = true, default_value_t = 16)]
    pub cap_degree: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kapranov zeta function of a class.
    Zeta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// The k-th symmetric power σ^k of a class.
    Sym {
        k: usize,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// A(T)^m for a series A with constant term 1 and a class exponent m.
    Power {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(allow_hyphen_values = true)]
        exponent: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// The opposite structure (ζ(-T))^{-1} of a class or a u, v polynomial.
    Opposite {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Hodge–Deligne realization L ↦ uv of a class.
    Hd {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// ∏ (1 - u^a v^b T)^{-c} for a u, v polynomial.
    HdZeta {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Necessary condition for effectiveness of a class or u, v polynomial.
    Effective {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Specialize a class at a rational value of L.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Run a verification scenario, or `all`.
    Verify {
        scenario: String,
        /// Scenario parameters as key=value.
        params: Vec<String>,
    },
}

/// Result of one invocation: exit code and the text for stdout or stderr.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => {
            let stderr = if cli.json {
                json!({"error": e.to_string(), "exit_code": e.exit_code()}).to_string()
            } else {
                format!("error: {e}")
            };
            Outcome { code: e.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn check_order(order: usize, cli: &Cli) -> Result<(), CliError> {
    if order > cli.cap_degree {
        return Err(CoreError::Resource(format!(
            "order {order} exceeds --cap-degree {}",
            cli.cap_degree
        ))
        .into());
    }
    Ok(())
}

fn render_series<R: Ring>(s: &TruncatedSeries<R>, json: bool) -> String {
    if json {
        return s.to_json().to_string();
    }
    let lines: Vec<String> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| format!("T^{k}: {c}"))
        .collect();
    lines.join("\n")
}

fn render<T: Display>(value: &T, as_json: Value, json: bool) -> String {
    if json {
        as_json.to_string()
    } else {
        value.to_string()
    }
}

fn execute(cli: &Cli) -> Result<(u8, String), CliError> {
    let cfg = ZetaConfig { cap_k: cli.cap_k };
    let json = cli.json;
    let text = match &cli.command {
        Command::Zeta { expr, order } => {
            check_order(*order, cli)?;
            let a = parse_class(expr)?;
            render_series(&zeta_class_with(&a, *order, &cfg)?, json)
        }
        Command::Sym { k, expr } => {
            check_order(*k, cli)?;
            let c = sigma_power(&parse_class(expr)?, *k, &cfg)?;
            render(&c, c.to_json(), json)
        }
        Command::Power { series: s, exponent, order } => {
            check_order(*order, cli)?;
            let base = series(s, *order)?;
            let m = parse_class(exponent)?;
            render_series(&power(&base, &m, &KapranovZeta { cfg })?, json)
        }
        Command::Opposite { expr, order } => {
            check_order(*order, cli)?;
            if mentions_hd_vars(&syntax::parse(expr)?) {
                render_series(&hd_opposite(&parse_hd_poly(expr)?, *order), json)
            } else {
                render_series(&zeta_opposite(&parse_class(expr)?, *order, &cfg)?, json)
            }
        }
        Command::Hd { expr } => {
            let r = parse_class(expr)?.realize_hd();
            let j = json!({"num": r.num.to_json(), "l_exp": r.l_exp, "factors": r.factors});
            render(&r, j, json)
        }
        Command::HdZeta { poly, order } => {
            check_order(*order, cli)?;
            render_series(&hd_zeta(&parse_hd_poly(poly)?, *order), json)
        }
        Command::Effective { expr } => {
            if mentions_hd_vars(&syntax::parse(expr)?) {
                let r = effectiveness_check_poly(&parse_hd_poly(expr)?);
                let j = json!({"verdict": r.verdict.to_string(), "top_part": r.top_part.to_string()});
                if json {
                    j.to_string()
                } else {
                    format!("{}\ntop part: {}", r.verdict, r.top_part)
                }
            } else {
                let r = effectiveness_check_class(&parse_class(expr)?);
                if json {
                    r.to_json().to_string()
                } else {
                    format!(
                        "{}\nas ({}) / ({})\nrealized numerator: {}\ntop part: {}",
                        r.verdict, r.numerator, r.shape, r.realized, r.top_part
                    )
                }
            }
        }
        Command::Eval { expr, at } => {
            let t = ExactRational::from_str(at.trim())
                .map_err(|_| CliError::Usage(format!("--at expects P or P/Q, got '{at}'")))?;
            let v = parse_class(expr)?.eval(&t)?;
            render(&v, json!(v.to_string()), json)
        }
        Command::Verify { scenario, params } => {
            let reports = run_scenario(scenario, params, cli, &cfg)?;
            let passed = reports.iter().all(|r| r.passed);
            let text = if json {
                if reports.len() == 1 {
                    reports[0].to_json().to_string()
                } else {
                    Value::Array(reports.iter().map(VerificationReport::to_json).collect()).to_string()
                }
            } else {
                let lines: Vec<String> = reports.iter().map(ToString::to_string).collect();
                lines.join("\n")
            };
            return Ok((if passed { 0 } else { 1 }, text));
        }
    };
    Ok((0, text))
}

/// `key=value` scenario parameters; every key must be consumed.
struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(raw: &[String]) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for p in raw {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("expected key=value, got '{p}'")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    fn get<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError> {
        match self.0.remove(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid value '{v}' for {key}"))),
        }
    }

    fn list(&mut self, key: &str, default: &[i64]) -> Result<Vec<i64>, CliError> {
        match self.0.remove(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("invalid list '{v}' for {key}")))
                })
                .collect(),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        match self.0.keys().next() {
            None => Ok(()),
            Some(k) => Err(CliError::Usage(format!("unknown parameter '{k}'"))),
        }
    }
}

pub const SCENARIOS: [&str; 13] = [
    "all",
    "fact1",
    "fact2",
    "zeta-some",
    "sym-gl1",
    "grassmannian",
    "axioms",
    "funceq",
    "psi",
    "statement1",
    "statement2",
    "representation",
    "numeric",
];

fn run_scenario(
    scenario: &str,
    raw: &[String],
    cli: &Cli,
    cfg: &ZetaConfig,
) -> Result<Vec<VerificationReport>, CliError> {
    let mut p = Params::parse(raw)?;
    let seed = cli.seed;
    let reports = match scenario {
        "all" => {
            p.finish()?;
            return Ok(default_suite(seed, cfg)?);
        }
        "fact1" => {
            let k = p.get("k", 2usize)?;
            let cap = p.get("cap", 8u32)?;
            let variant = if p.get("flipped", false)? {
                ClosedFormVariant::FlippedSign
            } else {
                ClosedFormVariant::Exact
            };
            p.finish()?;
            check_order(cap as usize, cli)?;
            verify_fact1(k, cap, variant)?
        }
        "fact2" => {
            let mults: Vec<u32> = p
                .list("mults", &[2, 1])?
                .into_iter()
                .map(|m| u32::try_from(m).map_err(|_| CliError::Usage(format!("bad multiplicity {m}"))))
                .collect::<Result<_, _>>()?;
            let cap = p.get("cap", 8u32)?;
            p.finish()?;
            check_order(cap as usize, cli)?;
            verify_fact2(&mults, cap)?
        }
        "zeta-some" => {
            let (m, n, order) = (p.get("m", 1i64)?, p.get("n", 1i64)?, p.get("order", 6usize)?);
            p.finish()?;
            check_order(order, cli)?;
            verify_zeta_some(m, n, order, cfg)?
        }
        "sym-gl1" => {
            let order = p.get("order", 5usize)?;
            p.finish()?;
            check_order(order, cli)?;
            verify_sym_gl1(order, cfg)?
        }
        "grassmannian" => {
            let (big_n, order) = (p.get("N", 4usize)?, p.get("order", 5usize)?);
            p.finish()?;
            check_order(order, cli)?;
            verify_grassmannian(big_n, order)?
        }
        "axioms" => {
            let ring = match p.get("ring", "motivic".to_string())?.as_str() {
                "motivic" => AxiomRing::Motivic,
                "hd" => AxiomRing::Hd,
                other => return Err(CliError::Usage(format!("unknown ring '{other}' (motivic, hd)"))),
            };
            let order = p.get("order", 5usize)?;
            let samples = p.get("samples", 20usize)?;
            let perturbed = p.get("perturbed", false)?;
            p.finish()?;
            check_order(order, cli)?;
            verify_axioms(ring, order, samples, seed, perturbed, cfg)?
        }
        "funceq" => {
            let b = parse_class(&p.get("b", "L + 1".to_string())?)?;
            let (m, n, order) = (p.get("m", 1i64)?, p.get("n", 1i64)?, p.get("order", 6usize)?);
            p.finish()?;
            check_order(order, cli)?;
            verify_funceq(&b, m, n, order, cfg)?
        }
        "psi" => {
            let b = parse_class(&p.get("b", "1".to_string())?)?;
            let (m, n) = (p.get("m", 1i64)?, p.get("n", 1i64)?);
            let prefix = p.get("prefix", 12usize)?;
            let order = p.get("order", 4usize)?;
            let degree = p.get("degree", 12i64)?;
            p.finish()?;
            check_order(order, cli)?;
            verify_psi(&b, m, n, prefix, order, degree, cfg)?
        }
        "statement1" => {
            p.finish()?;
            verify_statement1()?
        }
        "statement2" => {
            let order = p.get("order", 2usize)?;
            p.finish()?;
            check_order(order, cli)?;
            verify_statement2(order)?
        }
        "representation" => {
            let (samples, order) = (p.get("samples", 10usize)?, p.get("order", 5usize)?);
            p.finish()?;
            check_order(order, cli)?;
            verify_representation(seed, samples, order, cfg)?
        }
        "numeric" => {
            let points = p.list("points", &[2, 3, 5])?;
            let order = p.get("order", 6usize)?;
            p.finish()?;
            check_order(order, cli)?;
            verify_numeric(&points, order, cfg)?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown scenario '{other}'; expected one of {}",
                SCENARIOS.join(", ")
            )))
        }
    };
    Ok(vec![reports])
}
