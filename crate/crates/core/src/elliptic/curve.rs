use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::algebra::{int, parse_rational};
use crate::arith::{rational_mod_p, squarefree_part};
use crate::error::{Error, Result};

/// Long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
    pub b2: BigRational,
    pub b4: BigRational,
    pub b6: BigRational,
    pub b8: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub disc: BigRational,
    pub j: BigRational,
}

impl EllCurve {
    pub fn new(a1: BigRational, a2: BigRational, a3: BigRational, a4: BigRational, a6: BigRational) -> Result<Self> {
        let b2 = &a1 * &a1 + int(4) * &a2;
        let b4 = int(2) * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + int(4) * &a6;
        let b8 = &a1 * &a1 * &a6 + int(4) * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - int(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + int(36) * &b2 * &b4 - int(216) * &b6;
        let disc = -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6 + int(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::SingularModel);
        }
        let j = &c4 * &c4 * &c4 / &disc;
        debug_assert_eq!(int(1728) * &disc, &c4 * &c4 * &c4 - &c6 * &c6);
        Ok(EllCurve {
            a1,
            a2,
            a3,
            a4,
            a6,
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a.map(int);
        Self::new(a1, a2, a3, a4, a6)
    }

    /// `y^2 = x^3 + a x + b`.
    pub fn short(a: BigRational, b: BigRational) -> Result<Self> {
        Self::new(int(0), int(0), int(0), a, b)
    }

    /// A curve with the given j-invariant, for `j` not 0 or 1728:
    /// `y^2 + xy = x^3 - 36/(j - 1728) x - 1/(j - 1728)`.
    pub fn from_j(j: &BigRational) -> Result<Self> {
        if j.is_zero() || *j == int(1728) {
            return Err(Error::InvalidArgument(format!("no generic model for j = {j}")));
        }
        let k = j - int(1728);
        Self::new(int(1), int(0), int(0), -int(36) / &k, -int(1) / &k)
    }

    pub fn a_invariants(&self) -> [&BigRational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    /// Coefficients `(A, B)` of the isomorphic model `y^2 = x^3 - 27 c4 x - 54 c6`.
    pub fn short_coefficients(&self) -> (BigRational, BigRational) {
        (-int(27) * &self.c4, -int(54) * &self.c6)
    }

    pub fn short_model(&self) -> EllCurve {
        let (a, b) = self.short_coefficients();
        EllCurve::short(a, b).expect("isomorphic model is nonsingular")
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    /// Twist of the short model by the squarefree part of `d`:
    /// `y^2 = x^3 + A d^2 x + B d^3`.
    pub fn quadratic_twist(&self, d: &BigInt) -> Result<EllCurve> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("twist by zero".into()));
        }
        let d = BigRational::from_integer(squarefree_part(d));
        let (a, b) = if self.is_short() {
            (self.a4.clone(), self.a6.clone())
        } else {
            self.short_coefficients()
        };
        EllCurve::short(a * &d * &d, b * &d * &d * &d)
    }

    /// True when every a-invariant is `p`-integral and the discriminant is a `p`-adic unit.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.a_invariants().iter().all(|a| rational_mod_p(a, p).is_some())
            && rational_mod_p(&self.disc, p).is_some_and(|d| d != 0)
    }

    fn reduced_b(&self, p: u64) -> Result<(u64, u64, u64)> {
        if p < 3 || !self.has_good_reduction(p) {
            return Err(Error::BadReduction(p));
        }
        let m = |q: &BigRational| rational_mod_p(q, p).unwrap();
        Ok((m(&self.b2), m(&self.b4), m(&self.b6)))
    }

    /// Trace of Frobenius at an odd prime of good reduction, by counting
    /// `y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6` over all `x`.
    pub fn a_p(&self, p: u64) -> Result<i64> {
        let (b2, b4, b6) = self.reduced_b(p)?;
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for x in 1..p.div_ceil(2) {
            chi[(x * x % p) as usize] = 1;
        }
        let (b2, b4, b6) = (b2 as u128, b4 as u128, b6 as u128);
        let pp = p as u128;
        let mut sum = 0i64;
        for x in 0..pp {
            let v = (((4 * x + b2) * x % pp + 2 * b4) * x + b6) % pp;
            sum += chi[v as usize] as i64;
        }
        let ap = -sum;
        assert!((ap * ap) as u64 <= 4 * p, "Hasse bound violated at p = {p}: a_p = {ap}");
        Ok(ap)
    }

    /// `#E(F_p) = p + 1 - a_p`.
    pub fn count_points(&self, p: u64) -> Result<u64> {
        Ok((p as i64 + 1 - self.a_p(p)?) as u64)
    }

    pub fn is_on_curve(&self, x: &BigRational, y: &BigRational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    /// The integer `lcm` of the a-invariant denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num::Integer;
        self.a_invariants().iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl fmt::Display for EllCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

/// A curve given by its coefficients, or only by its j-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveInput {
    Curve(EllCurve),
    J(BigRational),
}

impl CurveInput {
    pub fn j(&self) -> &BigRational {
        match self {
            CurveInput::Curve(e) => &e.j,
            CurveInput::J(j) => j,
        }
    }

    /// The given curve, or the standard model with the given `j`.
    pub fn curve(&self) -> Result<EllCurve> {
        match self {
            CurveInput::Curve(e) => Ok(e.clone()),
            CurveInput::J(j) => EllCurve::from_j(j),
        }
    }
}

impl FromStr for CurveInput {
    type Err = Error;

    /// `a1,a2,a3,a4,a6` or `j=<rational>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("j=").or_else(|| s.strip_prefix("j =")) {
            let offset = s.len() - rest.len();
            return parse_rational(rest).map(CurveInput::J).map_err(|e| shift(e, offset));
        }
        s.parse::<EllCurve>().map(CurveInput::Curve)
    }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    }
}

impl FromStr for EllCurve {
    type Err = Error;

    /// Five comma-separated rationals `a1,a2,a3,a4,a6`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 5 {
            return Err(Error::parse(1, format!("expected 5 coefficients a1,a2,a3,a4,a6, found {}", parts.len())));
        }
        let mut vals = Vec::with_capacity(5);
        let mut offset = 0;
        for part in parts {
            if part.trim().is_empty() {
                return Err(Error::parse(offset + 1, "empty coefficient"));
            }
            vals.push(parse_rational(part).map_err(|e| shift(e, offset))?);
            offset += part.chars().count() + 1;
        }
        let mut it = vals.into_iter();
        let mut next = || it.next().unwrap();
        EllCurve::new(next(), next(), next(), next(), next())
    }
}

/// Sign of `d` modulo `p` as a quadratic character.
pub fn kronecker_odd(d: &BigInt, p: u64) -> i32 {
    let r = (d % BigInt::from(p) + BigInt::from(p)) % BigInt::from(p);
    crate::arith::legendre(r.to_i64().unwrap(), p)
}
