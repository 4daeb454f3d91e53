//! A small recursive-descent parser for polynomial and rational-function
//! expressions: `+ - * / ^`, parentheses, integer literals, single-letter
//! variables and implicit multiplication (`4t^3(8-t)`, `xy^5`).
//!
//! Exponents are signed integers, written `^-3` or `^{-3}`. The Unicode
//! minus `−` and middle dot `·` are accepted as `-` and `*`.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

use super::{BiPoly, RatFunc, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Num(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((col, Tok::Num(digits.parse().expect("ascii digits"))));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '{' | '}' => {
                out.push((col, Tok::Op(c)));
                i += 1;
            }
            '−' => {
                out.push((col, Tok::Op('-')));
                i += 1;
            }
            '·' => {
                out.push((col, Tok::Op('*')));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                out.push((col, Tok::Var(c)));
                i += 1;
            }
            other => return Err(Error::parse(col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.len + 1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::parse(self.column(), format!("expected {op:?}")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if self.starts_primary() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), e))
        } else {
            Ok(base)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let close = if self.eat('{') {
            Some('}')
        } else if self.eat('(') {
            Some(')')
        } else {
            None
        };
        let neg = self.eat('-');
        let col = self.column();
        let value = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                i64::try_from(n).map_err(|_| Error::parse(col, "exponent too large"))?
            }
            _ => return Err(Error::parse(col, "expected integer exponent")),
        };
        if let Some(c) = close {
            self.expect(c)?;
        }
        Ok(if neg { -value } else { value })
    }

    fn primary(&mut self) -> Result<Expr> {
        let col = self.column();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(t) => Err(Error::parse(col, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(col, "unexpected end of input")),
        }
    }
}

impl Expr {
    pub(crate) fn parse(s: &str) -> Result<Expr> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::parse(1, "empty expression"));
        }
        let mut p = Parser {
            toks,
            pos: 0,
            len: s.chars().count(),
        };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::parse(p.column(), "trailing input"));
        }
        Ok(e)
    }

    /// Distinct variables, in order of first appearance.
    pub(crate) fn variables(&self) -> Vec<char> {
        fn walk(e: &Expr, out: &mut Vec<char>) {
            match e {
                Expr::Num(_) => {}
                Expr::Var(v) => {
                    if !out.contains(v) {
                        out.push(*v)
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    walk(a, out);
                    walk(b, out)
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    pub(crate) fn to_rational(&self) -> Result<BigRational> {
        Ok(match self {
            Expr::Num(n) => BigRational::from_integer(n.clone()),
            Expr::Var(v) => return Err(Error::parse(1, format!("unexpected variable {v}"))),
            Expr::Neg(a) => -a.to_rational()?,
            Expr::Add(a, b) => a.to_rational()? + b.to_rational()?,
            Expr::Sub(a, b) => a.to_rational()? - b.to_rational()?,
            Expr::Mul(a, b) => a.to_rational()? * b.to_rational()?,
            Expr::Div(a, b) => {
                let d = b.to_rational()?;
                if d.is_zero() {
                    return Err(Error::parse(1, "division by zero"));
                }
                a.to_rational()? / d
            }
            Expr::Pow(a, e) => {
                let base = a.to_rational()?;
                if *e < 0 && base.is_zero() {
                    return Err(Error::parse(1, "zero to a negative power"));
                }
                num::pow::Pow::pow(&base, *e as i32)
            }
        })
    }

    /// Evaluates as a rational function in the single variable `var`.
    pub(crate) fn to_ratfunc(&self, var: char) -> Result<RatFunc> {
        Ok(match self {
            Expr::Num(n) => RatFunc::from_poly(UniPoly::constant(BigRational::from_integer(n.clone()))),
            Expr::Var(v) if *v == var => RatFunc::from_poly(UniPoly::x()),
            Expr::Var(v) => return Err(Error::parse(1, format!("unexpected variable {v}"))),
            Expr::Neg(a) => -&a.to_ratfunc(var)?,
            Expr::Add(a, b) => &a.to_ratfunc(var)? + &b.to_ratfunc(var)?,
            Expr::Sub(a, b) => &a.to_ratfunc(var)? - &b.to_ratfunc(var)?,
            Expr::Mul(a, b) => &a.to_ratfunc(var)? * &b.to_ratfunc(var)?,
            Expr::Div(a, b) => {
                let d = b.to_ratfunc(var)?;
                if d.is_zero() {
                    return Err(Error::parse(1, "division by zero"));
                }
                &a.to_ratfunc(var)? / &d
            }
            Expr::Pow(a, e) => {
                let base = a.to_ratfunc(var)?;
                if *e < 0 && base.is_zero() {
                    return Err(Error::parse(1, "zero to a negative power"));
                }
                base.powi(*e)
            }
        })
    }

    /// Evaluates as a polynomial in `x` and `y`; division only by nonzero constants.
    pub(crate) fn to_bipoly(&self) -> Result<BiPoly> {
        Ok(match self {
            Expr::Num(n) => BiPoly::constant(BigRational::from_integer(n.clone())),
            Expr::Var('x') => BiPoly::x(),
            Expr::Var('y') => BiPoly::y(),
            Expr::Var(v) => return Err(Error::parse(1, format!("unexpected variable {v}; use x and y"))),
            Expr::Neg(a) => -&a.to_bipoly()?,
            Expr::Add(a, b) => &a.to_bipoly()? + &b.to_bipoly()?,
            Expr::Sub(a, b) => &a.to_bipoly()? - &b.to_bipoly()?,
            Expr::Mul(a, b) => &a.to_bipoly()? * &b.to_bipoly()?,
            Expr::Div(a, b) => {
                let d = b.to_rational().map_err(|_| {
                    Error::parse(1, "polynomial division only by constants")
                })?;
                if d.is_zero() {
                    return Err(Error::parse(1, "division by zero"));
                }
                a.to_bipoly()?.scale(&(BigRational::one() / d))
            }
            Expr::Pow(a, e) => {
                if *e < 0 {
                    return Err(Error::parse(1, "negative exponent in a polynomial"));
                }
                a.to_bipoly()?.pow(*e as u32)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn implicit_multiplication_and_precedence() {
        let e = Expr::parse("4t^3(8-t)").unwrap();
        let f = e.to_ratfunc('t').unwrap();
        assert_eq!(f.to_string(), "-4t^4 + 32t^3");
        let g = Expr::parse("-t^2 + 1728").unwrap().to_ratfunc('t').unwrap();
        assert_eq!(g.to_string(), "-t^2 + 1728");
        assert_eq!(Expr::parse("1/2t").unwrap().to_ratfunc('t').unwrap().to_string(), "(1/2)t");
    }

    #[test]
    fn reports_column_of_error() {
        match Expr::parse("t^2 + $") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Expr::parse("(t+1").is_err());
        assert!(Expr::parse("").is_err());
    }
}
