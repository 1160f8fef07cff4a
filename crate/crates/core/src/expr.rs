//! Term expressions: `x(name)`, `0`, `1`, `!`, `&`, `|` and parentheses,
//! with precedence `!` > `&` > `|`.

use std::fmt;

use crate::algebra::BooleanAlgebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zero,
    One,
    Var(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.or()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    /// Evaluates in any Boolean algebra given an interpretation of the variables.
    pub fn eval<A, F>(&self, alg: &A, gen: &F) -> Result<A::Elem>
    where
        A: BooleanAlgebra,
        F: Fn(&str) -> Result<A::Elem>,
    {
        match self {
            Expr::Zero => Ok(alg.zero()),
            Expr::One => Ok(alg.one()),
            Expr::Var(n) => gen(n),
            Expr::Not(e) => alg.complement(&e.eval(alg, gen)?),
            Expr::And(a, b) => alg.meet(&a.eval(alg, gen)?, &b.eval(alg, gen)?),
            Expr::Or(a, b) => alg.join(&a.eval(alg, gen)?, &b.eval(alg, gen)?),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::One => f.write_str("1"),
            Expr::Var(n) => write!(f, "x({n})"),
            Expr::Not(e) => write!(f, "!{e}"),
            Expr::And(a, b) => write!(f, "({a} & {b})"),
            Expr::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn or(&mut self) -> Result<Expr> {
        let mut lhs = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            lhs = Expr::And(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.unary()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Expr::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(b'x') => {
                self.pos += 1;
                if self.peek() != Some(b'(') {
                    return Err(self.error("expected '(' after x"));
                }
                self.pos += 1;
                self.name().map(Expr::Var)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// Reads up to the `)` matching the one just consumed; names may
    /// themselves contain balanced parentheses, e.g. `x((0,1))`.
    fn name(&mut self) -> Result<String> {
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'(' => depth += 1,
                b')' if depth == 0 => {
                    let raw =
                        std::str::from_utf8(&self.src[start..self.pos]).map_err(|_| self.error("invalid utf-8"))?;
                    self.pos += 1;
                    let name = raw.trim();
                    if name.is_empty() {
                        return Err(self.error("empty element name"));
                    }
                    return Ok(name.to_string());
                }
                b')' => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.error("unterminated x("))
    }
}
