use std::fmt;

use num::{BigRational, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::int;

use super::EllCurve;

/// A rational point on a long Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Infinity,
    Affine(BigRational, BigRational),
}

impl Point {
    pub fn affine(x: BigRational, y: BigRational) -> Point {
        Point::Affine(x, y)
    }

    pub fn from_ints(x: i64, y: i64) -> Point {
        Point::Affine(int(x), int(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Point::Infinity => s.serialize_str("O"),
            Point::Affine(x, y) => [x.to_string(), y.to_string()].serialize(s),
        }
    }
}

impl EllCurve {
    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine(x, y) => self.is_on_curve(x, y),
        }
    }

    pub fn neg(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y - &self.a1 * x - &self.a3),
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let denom = int(2) * y1 + &self.a1 * x1 + &self.a3;
            if y1 != y2 || denom.is_zero() {
                return Point::Infinity;
            }
            (int(3) * x1 * x1 + int(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / denom
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, n: i64, p: &Point) -> Point {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let (mut acc, mut pow) = (Point::Infinity, base);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            pow = self.add(&pow, &pow);
            k >>= 1;
        }
        acc
    }

    /// Order of `p` if it is at most `bound`.
    pub fn order_up_to(&self, p: &Point, bound: u32) -> Option<u32> {
        let mut q = p.clone();
        for k in 1..=bound {
            if q == Point::Infinity {
                return Some(k);
            }
            q = self.add(&q, p);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_on_11a3() {
        // y^2 + y = x^3 - x^2 has a rational 5-torsion point (0, 0).
        let e = EllCurve::from_ints([0, -1, 1, 0, 0]).unwrap();
        let p = Point::from_ints(0, 0);
        assert!(e.contains(&p));
        assert_eq!(e.order_up_to(&p, 16), Some(5));
        assert_eq!(e.add(&p, &e.neg(&p)), Point::Infinity);
        assert_eq!(e.mul(-2, &p), e.mul(3, &p));
    }
}
