use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

use super::expr::Expr;
use super::rational::write_term;
use super::{RatFunc, UniPoly};

/// Sparse polynomial in `x` and `y` over Q: `(i, j) -> coefficient of x^i y^j`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn x() -> Self {
        Self::from_terms([((1, 0), BigRational::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([((0, 1), BigRational::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), BigRational)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            let e: &mut BigRational = terms.entry(k).or_insert_with(BigRational::zero);
            *e += c;
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        BiPoly { terms }
    }

    /// `p(x)` viewed as a polynomial in `x` and `y`.
    pub fn from_uni_x(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())))
    }

    /// `p(y)` viewed as a polynomial in `x` and `y`.
    pub fn from_uni_y(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| ((0, j as u32), c.clone())))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.at_x(x).eval(y)
    }

    /// `p(x0, y)` as a polynomial in `y`.
    pub fn at_x(&self, x0: &BigRational) -> UniPoly {
        let dy = self.degree_y().map_or(0, |d| d as usize + 1);
        let mut cs = vec![BigRational::zero(); dy];
        for ((i, j), c) in &self.terms {
            cs[*j as usize] += c * num::pow::Pow::pow(x0, *i);
        }
        UniPoly::from_coeffs(cs)
    }

    /// `p(x, y0)` as a polynomial in `x`.
    pub fn at_y(&self, y0: &BigRational) -> UniPoly {
        let dx = self.degree_x().map_or(0, |d| d as usize + 1);
        let mut cs = vec![BigRational::zero(); dx];
        for ((i, j), c) in &self.terms {
            cs[*i as usize] += c * num::pow::Pow::pow(y0, *j);
        }
        UniPoly::from_coeffs(cs)
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c * BigRational::from_integer((*i).into()))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|((i, j), c)| ((*i, j - 1), c * BigRational::from_integer((*j).into()))),
        )
    }

    /// Terms in descending lex order: higher `x` power first, then higher `y`.
    fn lex_desc(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter().rev()
    }

    /// Integer coefficients with content 1, leading term (in lex order,
    /// `x` before `y`) positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lcm = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<((u32, u32), BigInt)> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, (c * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let lead_negative = self.lex_desc().next().unwrap().1.is_negative();
        let content = if lead_negative { -content } else { content };
        Self::from_terms(ints.into_iter().map(|(k, c)| (k, BigRational::from_integer(c / &content))))
    }

    /// Integer coefficients of a normalized polynomial.
    pub fn integer_terms(&self) -> Vec<((u32, u32), BigInt)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                assert!(c.is_integer(), "integer_terms on a non-integral polynomial");
                (*k, c.to_integer())
            })
            .collect()
    }
}

fn monomial(i: u32, j: u32) -> String {
    let mut s = String::new();
    for (v, e) in [('x', i), ('y', j)] {
        match e {
            0 => {}
            1 => s.push(v),
            _ => s.push_str(&format!("{v}^{e}")),
        }
    }
    s
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, ((i, j), c)) in self.lex_desc().enumerate() {
            write_term(&mut out, c, &monomial(*i, *j), n == 0);
        }
        f.write_str(&out)
    }
}

impl FromStr for BiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)?.to_bipoly()
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().chain(rhs.terms.iter()).map(|(k, c)| (*k, c.clone())))
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &rhs.terms {
                *out.entry((i + k, j + l)).or_insert_with(BigRational::zero) += a * b;
            }
        }
        BiPoly::from_terms(out)
    }
}

/// Numerator of `j1(x) - j2(y)`, normalized. Vanishes at `(x0, y0)` exactly
/// when `j1(x0) = j2(y0)` away from poles; no cancellation against the
/// denominator is possible because each `j_i` is in lowest terms.
pub fn bipoly_from_jmap_difference(j1: &RatFunc, j2: &RatFunc) -> BiPoly {
    let n1 = BiPoly::from_uni_x(j1.num());
    let d1 = BiPoly::from_uni_x(j1.den());
    let n2 = BiPoly::from_uni_y(j2.num());
    let d2 = BiPoly::from_uni_y(j2.den());
    (&(&n1 * &d2) - &(&n2 * &d1)).normalized()
}
