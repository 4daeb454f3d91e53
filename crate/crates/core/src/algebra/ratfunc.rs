use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};

use super::expr::Expr;
use super::rational::Extended;
use super::UniPoly;

/// A rational function `num / den` over Q in lowest terms with monic `den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Reduces `num / den`. Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.div_rem(&g).0, den.div_rem(&g).0);
        let lc = den.leading().unwrap().clone();
        let inv = BigRational::one() / lc;
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Degree as a map P^1 -> P^1.
    pub fn map_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Evaluation on the projective line. Roots of the denominator (cusps,
    /// for a j-map) go to infinity; infinity goes to infinity, zero, or the
    /// ratio of leading coefficients according to the degrees.
    pub fn eval(&self, t: &Extended) -> Extended {
        match t {
            Extended::Finite(t) => {
                let d = self.den.eval(t);
                if d.is_zero() {
                    Extended::Infinity
                } else {
                    Extended::Finite(self.num.eval(t) / d)
                }
            }
            Extended::Infinity => {
                let dn = self.num.degree();
                let dd = self.den.degree().unwrap_or(0);
                match dn {
                    None => Extended::Finite(BigRational::zero()),
                    Some(n) if n > dd => Extended::Infinity,
                    Some(n) if n < dd => Extended::Finite(BigRational::zero()),
                    Some(_) => Extended::Finite(self.num.leading().unwrap() / self.den.leading().unwrap()),
                }
            }
        }
    }

    /// Convenience for finite arguments.
    pub fn eval_at(&self, t: &BigRational) -> Extended {
        self.eval(&Extended::Finite(t.clone()))
    }

    pub fn powi(&self, e: i64) -> Self {
        let k = e.unsigned_abs() as u32;
        let (n, d) = (self.num.pow(k), self.den.pow(k));
        if e >= 0 {
            RatFunc::new(n, d)
        } else {
            RatFunc::new(d, n)
        }
    }

    pub fn fmt_with(&self, var: char) -> String {
        if self.den.is_constant() {
            return self.num.fmt_with(var);
        }
        let n = self.num.fmt_with(var);
        let single = |p: &UniPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
        let n = if single(&self.num) && !n.starts_with('-') && !n.contains('/') {
            n
        } else {
            format!("({n})")
        };
        let d = self.den.fmt_with(var);
        let d = if single(&self.den) { d } else { format!("({d})") };
        format!("{n}/{d}")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with('t'))
    }
}

impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let e = Expr::parse(s)?;
        let vars = e.variables();
        if vars.len() > 1 {
            return Err(Error::parse(1, format!("expected one variable, found {vars:?}")));
        }
        e.to_ratfunc(vars.first().copied().unwrap_or('t'))
    }
}
