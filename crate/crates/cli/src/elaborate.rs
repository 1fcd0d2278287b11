//! Turns parsed expressions into classes, `(u, v)` polynomials or series in `T`.

use motzeta_core::{Error as CoreError, MotivicClass, MultiPoly, Ring, TruncatedSeries};
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::syntax::{parse, BinOp, Expr, Pos, SyntaxError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("{pos}: {msg}")]
    Elaborate { pos: Pos, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Syntax(_) | CliError::Elaborate { .. } | CliError::Usage(_) => 2,
            CliError::Core(CoreError::Resource(_)) => 4,
            CliError::Core(_) => 3,
        }
    }
}

fn at<T>(pos: Pos, msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Elaborate {
        pos,
        msg: msg.into(),
    })
}

fn is_hd_var(s: &str) -> bool {
    s == "u" || s == "v"
}

/// Whether the expression is a `(u, v)` polynomial rather than a class.
pub fn mentions_hd_vars(e: &Expr) -> bool {
    e.mentions(&is_hd_var)
}

fn small_int(e: &Expr) -> Result<i64, CliError> {
    let c = class(e)?;
    match c.as_laurent().filter(|p| p.max_deg().unwrap_or(0) == 0 && !p.has_negative_degree()) {
        Some(p) => p
            .coeff(0)
            .to_i64()
            .map_or_else(|| at(e.pos(), "integer argument out of range"), Ok),
        None => at(e.pos(), format!("expected an integer argument, found {c}")),
    }
}

fn invert(divisor: &MotivicClass, pos: Pos) -> Result<MotivicClass, CliError> {
    divisor.try_inv().or_else(|_| {
        at(
            pos,
            format!("cannot divide by {divisor}: only ±L^e·∏(L^n - 1) is invertible"),
        )
    })
}

/// A class in the localized ring.
pub fn class(e: &Expr) -> Result<MotivicClass, CliError> {
    match e {
        Expr::Int(n, _) => Ok(MotivicClass::integer(n.clone())),
        Expr::Sym(s, pos) => match s.as_str() {
            "L" => Ok(MotivicClass::l()),
            "q" => Ok(MotivicClass::q()),
            "u" | "v" | "T" => at(*pos, format!("'{s}' is not allowed in a class expression")),
            _ => at(*pos, format!("unknown identifier '{s}'")),
        },
        Expr::Neg(a, _) => Ok(class(a)?.neg()),
        Expr::Bin(op, a, b, pos) => {
            let (a, b) = (class(a)?, class(b)?);
            Ok(match op {
                BinOp::Add => a.add(&b),
                BinOp::Sub => a.sub(&b),
                BinOp::Mul => a.mul(&b),
                BinOp::Div => a.mul(&invert(&b, *pos)?),
            })
        }
        Expr::Pow(base, k, pos) => {
            let b = class(base)?;
            let b = if *k < 0 { invert(&b, *pos)? } else { b };
            Ok(Ring::pow(&b, k.unsigned_abs() as u32))
        }
        Expr::Call(f, args, pos) => {
            let ints = args.iter().map(small_int).collect::<Result<Vec<_>, _>>()?;
            match (f.as_str(), ints.as_slice()) {
                ("GL", [n]) => Ok(MotivicClass::gl(*n)?),
                ("BGL", [n]) => Ok(MotivicClass::bgl(*n)?),
                ("Gr", [k, n]) => Ok(MotivicClass::grassmannian(*k, *n)?),
                ("GL" | "BGL", _) => at(*pos, format!("{f} takes one integer argument")),
                ("Gr", _) => at(*pos, "Gr takes two integer arguments"),
                _ => at(*pos, format!("unknown function '{f}'")),
            }
        }
    }
}

/// A polynomial in `u, v`; `L` stands for `uv`.
pub fn hd_poly(e: &Expr) -> Result<MultiPoly, CliError> {
    let vars = MultiPoly::hd_vars();
    match e {
        Expr::Int(n, _) => Ok(MultiPoly::constant(vars, n.clone())),
        Expr::Sym(s, pos) => match s.as_str() {
            "u" => Ok(MultiPoly::var(vars, 0)),
            "v" => Ok(MultiPoly::var(vars, 1)),
            "L" => Ok(MultiPoly::uv_monomial(1, 1)),
            _ => at(*pos, format!("'{s}' is not allowed in a u, v polynomial")),
        },
        Expr::Neg(a, _) => Ok(hd_poly(a)?.neg()),
        Expr::Bin(op, a, b, pos) => {
            let (a, b) = (hd_poly(a)?, hd_poly(b)?);
            match op {
                BinOp::Add => Ok(a.add(&b)),
                BinOp::Sub => Ok(a.sub(&b)),
                BinOp::Mul => Ok(a.mul(&b)),
                BinOp::Div => match b.constant_value() {
                    Some(d) if d != 0.into() => match a.div_int_exact(&d) {
                        Some(p) => Ok(p),
                        None => at(*pos, format!("{a} is not divisible by {d}")),
                    },
                    _ => at(*pos, "u, v polynomials can only be divided by integers"),
                },
            }
        }
        Expr::Pow(base, k, pos) => {
            if *k < 0 {
                return at(*pos, "negative powers are not polynomials");
            }
            Ok(hd_poly(base)?.pow(*k as u32))
        }
        Expr::Call(f, _, pos) => at(*pos, format!("'{f}' is not allowed in a u, v polynomial")),
    }
}

type Dense = Vec<MotivicClass>;

fn dense_mul(a: &Dense, b: &Dense, order: usize) -> Dense {
    let mut out = vec![MotivicClass::zero(); (a.len() + b.len() - 1).min(order + 1)];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= order && !x.is_zero() && !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

fn dense_add(a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

/// Polynomial in `T` with class coefficients, truncated at `order`.
fn dense(e: &Expr, order: usize) -> Result<Dense, CliError> {
    if !e.mentions(&|s| s == "T") {
        return Ok(vec![class(e)?]);
    }
    match e {
        Expr::Sym(_, _) => Ok(vec![MotivicClass::zero(), MotivicClass::one()]),
        Expr::Neg(a, _) => Ok(dense(a, order)?.iter().map(MotivicClass::neg).collect()),
        Expr::Bin(op, a, b, pos) => match op {
            BinOp::Add => Ok(dense_add(&dense(a, order)?, &dense(b, order)?)),
            BinOp::Sub => {
                let nb: Dense = dense(b, order)?.iter().map(MotivicClass::neg).collect();
                Ok(dense_add(&dense(a, order)?, &nb))
            }
            BinOp::Mul => Ok(dense_mul(&dense(a, order)?, &dense(b, order)?, order)),
            BinOp::Div => {
                if b.mentions(&|s| s == "T") {
                    return at(*pos, "series input can only be divided by classes free of T");
                }
                let inv = invert(&class(b)?, *pos)?;
                Ok(dense(a, order)?.iter().map(|c| c.mul(&inv)).collect())
            }
        },
        Expr::Pow(base, k, pos) => {
            if *k < 0 {
                return at(*pos, "negative powers of a series in T are not accepted");
            }
            let b = dense(base, order)?;
            Ok((0..*k).fold(vec![MotivicClass::one()], |acc, _| dense_mul(&acc, &b, order)))
        }
        Expr::Int(..) | Expr::Call(..) => Ok(vec![class(e)?]),
    }
}

/// A series `1 + c_1 T + …` given as a polynomial in `T`; the constant
/// term must be exactly one.
pub fn series(src: &str, order: usize) -> Result<TruncatedSeries<MotivicClass>, CliError> {
    let e = parse(src)?;
    let mut cs = dense(&e, order)?;
    cs.truncate(order + 1);
    let s = TruncatedSeries::from_prefix(cs, &MotivicClass::one(), order);
    if !s.coeff(0).is_one() {
        return at(
            e.pos(),
            format!("series must have constant term 1, found {}", s.coeff(0)),
        );
    }
    Ok(s)
}

pub fn parse_class(src: &str) -> Result<MotivicClass, CliError> {
    class(&parse(src)?)
}

pub fn parse_hd_poly(src: &str) -> Result<MultiPoly, CliError> {
    hd_poly(&parse(src)?)
}
