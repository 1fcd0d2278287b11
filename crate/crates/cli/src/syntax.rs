//! Lexer and recursive-descent parser for class, polynomial and series
//! expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term }
//! term    = unary { ("*" | "/") unary }
//! unary   = "-" unary | power
//! power   = atom [ "^" exponent ]
//! exponent = ["-"] INT | "(" ["-"] INT ")"
//! atom    = INT | IDENT [ "(" expr { "," expr } ")" ] | "(" expr ")"
//! ```
//!
//! `^` binds tighter than unary minus, so `-L^2` is `-(L^2)`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{pos}: {msg}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
                col += 1;
            }
            out.push((Tok::Ident(name), pos));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => {
                return Err(SyntaxError {
                    pos,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        chars.next();
        col += 1;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Abstract syntax of an expression; every node carries its source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, Pos),
    Sym(String, Pos),
    Neg(Box<Expr>, Pos),
    Bin(BinOp, Box<Expr>, Box<Expr>, Pos),
    Pow(Box<Expr>, i64, Pos),
    Call(String, Vec<Expr>, Pos),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Int(_, p)
            | Expr::Sym(_, p)
            | Expr::Neg(_, p)
            | Expr::Bin(_, _, _, p)
            | Expr::Pow(_, _, p)
            | Expr::Call(_, _, p) => *p,
        }
    }

    /// Whether any symbol satisfies `pred`.
    pub fn mentions(&self, pred: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Expr::Int(..) => false,
            Expr::Sym(s, _) => pred(s),
            Expr::Neg(e, _) | Expr::Pow(e, _, _) => e.mentions(pred),
            Expr::Bin(_, a, b, _) => a.mentions(pred) || b.mentions(pred),
            Expr::Call(_, args, _) => args.iter().any(|a| a.mentions(pred)),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let (_, pos) = self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            let (_, pos) = self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), pos);
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?), pos));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (_, pos) = self.bump();
        let exp = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), exp, pos))
    }

    fn exponent(&mut self) -> Result<i64, SyntaxError> {
        let parens = *self.peek() == Tok::LParen;
        if parens {
            self.bump();
        }
        let negative = *self.peek() == Tok::Minus;
        if negative {
            self.bump();
        }
        let pos = self.pos();
        let value = match self.bump().0 {
            Tok::Int(n) => i64::try_from(&n).map_err(|_| SyntaxError {
                pos,
                msg: format!("exponent {n} is too large"),
            })?,
            other => {
                return Err(SyntaxError {
                    pos,
                    msg: format!("exponent must be an integer, found {other}"),
                })
            }
        };
        if parens {
            self.expect(Tok::RParen)?;
        }
        Ok(if negative { -value } else { value })
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr::Int(n, pos)),
            Tok::Ident(name) => {
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Sym(name, pos));
                }
                self.bump();
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                Ok(Expr::Call(name, args, pos))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(SyntaxError {
                pos,
                msg: format!("expected a number, symbol or '(', found {other}"),
            }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {} after expression", p.peek()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(e: &Expr) -> String {
        match e {
            Expr::Int(n, _) => n.to_string(),
            Expr::Sym(s, _) => s.clone(),
            Expr::Neg(a, _) => format!("(neg {})", shape(a)),
            Expr::Bin(op, a, b, _) => format!("({op:?} {} {})", shape(a), shape(b)),
            Expr::Pow(a, k, _) => format!("(pow {} {k})", shape(a)),
            Expr::Call(f, args, _) => {
                let args: Vec<String> = args.iter().map(shape).collect();
                format!("({f} {})", args.join(" "))
            }
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(shape(&parse("-L^2").unwrap()), "(neg (pow L 2))");
        assert_eq!(shape(&parse("1 - 2 - 3").unwrap()), "(Sub (Sub 1 2) 3)");
        assert_eq!(shape(&parse("a/b*c").unwrap()), "(Mul (Div a b) c)");
        assert_eq!(shape(&parse("1 + 2*L").unwrap()), "(Add 1 (Mul 2 L))");
        assert_eq!(shape(&parse("L^-2").unwrap()), "(pow L -2)");
        assert_eq!(shape(&parse("q^(-1)").unwrap()), "(pow q -1)");
        assert_eq!(shape(&parse("Gr(2, 4)").unwrap()), "(Gr 2 4)");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("1 +\n  * L").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, col: 3 });
        let e = parse("(L - 1").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 7 });
        assert!(parse("L^x").is_err());
        assert!(parse("L $ 1").is_err());
    }
}
