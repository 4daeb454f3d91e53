use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::factor_rational;
use crate::error::{Error, Result};

use super::expr::Expr;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational constant. Plain `a/b` works, and so do factored
/// forms such as `-2^-3*5^2*241^3` or `-2^{-3}·5^2·241^3`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    Expr::parse(s)?.to_rational()
}

/// Formats a rational as a product of prime powers, e.g. `-2^-3*5^2*241^3`.
pub fn format_factored(q: &BigRational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let (sign, parts) = factor_rational(q);
    if parts.is_empty() {
        return if sign < 0 { "-1".into() } else { "1".into() };
    }
    let body = parts
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*");
    if sign < 0 {
        format!("-{body}")
    } else {
        body
    }
}

/// A point of the projective line over Q: a rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extended {
    Finite(BigRational),
    Infinity,
}

impl Extended {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Extended::Finite(q) => Some(q),
            Extended::Infinity => None,
        }
    }
}

impl From<BigRational> for Extended {
    fn from(q: BigRational) -> Self {
        Extended::Finite(q)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(q) => write!(f, "{q}"),
            Extended::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Extended {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Extended::Infinity),
            other => parse_rational(other).map(Extended::Finite),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Writes a coefficient in front of a monomial. `first` controls whether a
/// leading `+` is suppressed. Non-integers are parenthesised so the
/// output reparses unambiguously.
pub(crate) fn write_term(out: &mut String, c: &BigRational, monomial: &str, first: bool) {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if monomial.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(monomial);
    } else if a.is_integer() {
        out.push_str(&a.to_string());
        out.push_str(monomial);
    } else {
        out.push_str(&format!("({a}){monomial}"));
    }
}
