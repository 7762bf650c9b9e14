//! Tiny recursive-descent parser for function expressions in one variable `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | number 'i' | 'i' | 'x' | func ('(' expr ')')? | '(' expr ')'
//! func   := exp | sin | cos | sinh | cosh
//! ```
//!
//! A bare function name applies to `x`, so `exp` means `exp(x)`. Complex
//! literals are written `a+bi`. There is no division.

use num_complex::Complex64;

use crate::components::ScalarFunction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }

    fn apply(self, z: Complex64) -> Complex64 {
        match self {
            Func::Exp => z.exp(),
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Neg(a) => -a.eval(x),
            Expr::Add(a, b) => a.eval(x) + b.eval(x),
            Expr::Sub(a, b) => a.eval(x) - b.eval(x),
            Expr::Mul(a, b) => a.eval(x) * b.eval(x),
            Expr::Pow(a, k) => a.eval(x).powu(*k),
            Expr::Call(f, a) => f.apply(a.eval(x)),
        }
    }

    pub fn into_function(self) -> ScalarFunction {
        ScalarFunction::new(move |x| self.eval(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        let start = i;
        match ch {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            c if c.is_ascii_digit() || c == '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| perr(start, format!("bad number '{text}'")))?;
                let imag = i < bytes.len()
                    && bytes[i] == b'i'
                    && !bytes.get(i + 1).is_some_and(|b| b.is_ascii_alphanumeric());
                if imag {
                    i += 1;
                    out.push((start, Tok::Imag(v)));
                } else {
                    out.push((start, Tok::Num(v)));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => return Err(perr(start, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.here();
            return match self.bump() {
                Some(Tok::Num(v)) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => {
                    Ok(Expr::Pow(Box::new(base), v as u32))
                }
                _ => Err(perr(at, "exponent must be a nonnegative integer")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Const(Complex64::new(v, 0.0))),
            Some(Tok::Imag(v)) => Ok(Expr::Const(Complex64::new(0.0, v))),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect_rparen(at)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "i" => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
                _ => {
                    let f = Func::from_name(&name).ok_or_else(|| perr(at, format!("unknown name '{name}'")))?;
                    if let Some(Tok::LParen) = self.peek() {
                        let open = self.here();
                        self.bump();
                        let arg = self.expr()?;
                        self.expect_rparen(open)?;
                        Ok(Expr::Call(f, Box::new(arg)))
                    } else {
                        Ok(Expr::Call(f, Box::new(Expr::Var)))
                    }
                }
            },
            Some(tok) => Err(perr(at, format!("unexpected token {tok:?}"))),
            None => Err(perr(at, "unexpected end of input")),
        }
    }

    fn expect_rparen(&mut self, open: usize) -> Result<()> {
        let at = self.here();
        match self.bump() {
            Some(Tok::RParen) => Ok(()),
            _ => Err(perr(at, format!("expected ')' to close '(' at {open}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(perr(p.here(), "unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_function(src: &str) -> Result<ScalarFunction> {
    parse(src).map(Expr::into_function)
}

/// Parses a constant expression such as `1.5`, `-2i` or `0.5-1.25i`.
pub fn parse_complex(src: &str) -> Result<Complex64> {
    fn has_var(e: &Expr) -> bool {
        match e {
            Expr::Const(_) => false,
            Expr::Var | Expr::Call(..) => true,
            Expr::Neg(a) | Expr::Pow(a, _) => has_var(a),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => has_var(a) || has_var(b),
        }
    }
    let e = parse(src)?;
    if has_var(&e) {
        return Err(perr(0, "expected a complex constant"));
    }
    Ok(e.eval(Complex64::new(0.0, 0.0)))
}
