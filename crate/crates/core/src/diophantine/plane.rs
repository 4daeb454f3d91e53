use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{parse_rational, rational_roots, BiPoly, UniPoly};
use crate::arith::{inv_mod, primes_up_to};
use crate::error::{Error, Result};

/// A point of P^2(Q), scaled so that Z = 1, or X = 1 on the line Z = 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint([BigRational; 3]);

impl ProjPoint {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Result<Self> {
        let pivot = [&z, &x, &y].into_iter().find(|c| !c.is_zero()).cloned();
        let Some(s) = pivot else {
            return Err(Error::InvalidArgument("(0 : 0 : 0) is not a projective point".into()));
        };
        Ok(ProjPoint([x / &s, y / &s, z / &s]))
    }

    pub fn affine(x: BigRational, y: BigRational) -> Self {
        ProjPoint([x, y, BigRational::one()])
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.0
    }

    pub fn is_affine(&self) -> bool {
        !self.0[2].is_zero()
    }

    /// `(x, y)` when `Z != 0`.
    pub fn to_affine(&self) -> Option<(&BigRational, &BigRational)> {
        self.is_affine().then(|| (&self.0[0], &self.0[1]))
    }

    /// Largest absolute numerator or denominator among the coordinates.
    pub fn height(&self) -> BigInt {
        self.0
            .iter()
            .flat_map(|c| [c.numer().abs(), c.denom().clone()])
            .max()
            .unwrap()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.0;
        write!(f, "({x} : {y} : {z})")
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    /// `(x : y : z)`, parentheses optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::parse(1, format!("expected three coordinates in {s:?}")));
        }
        let c = parts.iter().map(|p| parse_rational(p.trim())).collect::<Result<Vec<_>>>()?;
        let [x, y, z]: [BigRational; 3] = c.try_into().unwrap();
        ProjPoint::new(x, y, z)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        if v.len() != 3 {
            return Err(serde::de::Error::custom("expected three coordinates"));
        }
        let c = v
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let [x, y, z]: [BigRational; 3] = c.try_into().unwrap();
        ProjPoint::new(x, y, z).map_err(serde::de::Error::custom)
    }
}

type Monomial = (u32, u32, u32);

/// An affine plane curve `f(x, y) = 0` together with its closure in P^2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    poly: BiPoly,
    degree: u32,
    hom: Vec<(Monomial, BigInt)>,
}

impl PlaneCurve {
    pub fn new(poly: &BiPoly) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let poly = poly.normalized();
        let degree = poly.total_degree().unwrap();
        let hom = poly
            .integer_terms()
            .into_iter()
            .map(|((i, j), c)| ((i, j, degree - i - j), c))
            .collect();
        Ok(PlaneCurve { poly, degree, hom })
    }

    pub fn poly(&self) -> &BiPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Integer coefficients of the homogenization `F(X, Y, Z)`.
    pub fn homogeneous_terms(&self) -> &[(Monomial, BigInt)] {
        &self.hom
    }

    fn eval_hom(&self, p: &[BigRational; 3], d: Option<usize>) -> BigRational {
        let mut acc = BigRational::zero();
        for ((i, j, k), c) in &self.hom {
            let mut e = [*i, *j, *k];
            let mut coeff = BigRational::from_integer(c.clone());
            if let Some(v) = d {
                if e[v] == 0 {
                    continue;
                }
                coeff *= BigRational::from_integer(e[v].into());
                e[v] -= 1;
            }
            let mut term = coeff;
            for (x, n) in p.iter().zip(e) {
                if n > 0 {
                    term *= num::pow(x.clone(), n as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval_hom(p.coords(), None).is_zero()
    }

    /// All partials of `F` vanish at `p`.
    pub fn is_singular_at(&self, p: &ProjPoint) -> bool {
        self.contains(p) && (0..3).all(|v| self.eval_hom(p.coords(), Some(v)).is_zero())
    }

    /// Rational points on the line `Z = 0`.
    pub fn points_at_infinity(&self) -> Vec<ProjPoint> {
        let top: Vec<(u32, &BigInt)> = self.hom.iter().filter(|((_, _, k), _)| *k == 0).map(|((_, j, _), c)| (*j, c)).collect();
        let mut out = Vec::new();
        // Y^d has no coefficient exactly when (0 : 1 : 0) lies on the curve.
        if !top.iter().any(|(j, _)| *j == self.degree) {
            out.push(ProjPoint([BigRational::zero(), BigRational::one(), BigRational::zero()]));
        }
        let mut cs = vec![BigRational::zero(); self.degree as usize + 1];
        for (j, c) in top {
            cs[j as usize] = BigRational::from_integer(c.clone());
        }
        let f = UniPoly::from_coeffs(cs);
        for m in rational_roots(&f).expect("top form is nonzero") {
            out.push(ProjPoint([BigRational::one(), m, BigRational::zero()]));
        }
        out.sort();
        out
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl FromStr for PlaneCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlaneCurve::new(&s.parse()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub model: String,
    pub bound: u64,
    pub points: Vec<ProjPoint>,
    pub singular_flags: Vec<bool>,
}

impl SearchResult {
    pub fn affine_points(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter().filter(|p| p.is_affine())
    }
}

/// For one small prime q: which x in P^1(F_q) admit some y in P^1(F_q)
/// on the bihomogenized curve. Index q stands for x = infinity.
struct Prefilter {
    q: u64,
    ok: Vec<bool>,
}

impl Prefilter {
    fn new(curve: &PlaneCurve, q: u64) -> Self {
        let dx = curve.poly.degree_x().unwrap_or(0);
        let dy = curve.poly.degree_y().unwrap_or(0);
        let qb = BigInt::from(q);
        let terms: Vec<(u32, u32, u64)> = curve
            .poly
            .integer_terms()
            .into_iter()
            .map(|((i, j), c)| (i, j, c.mod_floor(&qb).to_u64().unwrap()))
            .filter(|t| t.2 != 0)
            .collect();
        let line: Vec<(u64, u64)> = (0..q).map(|a| (a, 1)).chain([(1, 0)]).collect();
        let pw = |b: u64, e: u32| crate::arith::pow_mod(b, e as u64, q);
        let ok = line
            .iter()
            .map(|&(a, b)| {
                line.iter().any(|&(c, d)| {
                    let s = terms.iter().fold(0u64, |acc, &(i, j, k)| {
                        let m = pw(a, i) * pw(b, dx - i) % q * pw(c, j) % q * pw(d, dy - j) % q;
                        (acc + k * m) % q
                    });
                    s == 0
                })
            })
            .collect();
        Prefilter { q, ok }
    }

    fn admits(&self, a: i64, b: i64) -> bool {
        let q = self.q as i64;
        let (a, b) = (a.rem_euclid(q) as u64, b.rem_euclid(q) as u64);
        let idx = if b == 0 {
            self.q
        } else {
            a * inv_mod(b, self.q).unwrap() % self.q
        };
        self.ok[idx as usize]
    }
}

/// Rational points with affine coordinates of height at most `bound`, plus
/// every rational point at infinity.
pub fn search_points(curve: &PlaneCurve, bound: u64) -> Result<SearchResult> {
    if bound == 0 {
        return Err(Error::InvalidArgument("height bound must be at least 1".into()));
    }
    let h = bound as i64;
    let filters: Vec<Prefilter> = primes_up_to(47).into_iter().map(|q| Prefilter::new(curve, q)).collect();
    let hb = BigInt::from(bound);
    let found: BTreeSet<ProjPoint> = (1..=h)
        .into_par_iter()
        .flat_map_iter(|b| {
            let filters = &filters;
            let hb = &hb;
            (-h..=h)
                .filter(move |a| a.gcd(&b) == 1 && filters.iter().all(|f| f.admits(*a, b)))
                .flat_map(move |a| {
                    let x = BigRational::new(a.into(), b.into());
                    let fy = curve.poly.at_x(&x);
                    // A vertical line inside the curve contributes no isolated points.
                    let ys = rational_roots(&fy).unwrap_or_default();
                    ys.into_iter()
                        .filter(|y| y.numer().abs() <= *hb && *y.denom() <= *hb)
                        .map(move |y| ProjPoint::affine(x.clone(), y))
                        .collect::<Vec<_>>()
                })
        })
        .collect();
    let mut points: Vec<ProjPoint> = found.into_iter().collect();
    points.extend(curve.points_at_infinity());
    points.sort();
    points.dedup();
    debug_assert!(points.iter().all(|p| curve.contains(p)));
    let singular_flags = points.iter().map(|p| curve.is_singular_at(p)).collect();
    Ok(SearchResult {
        model: curve.to_string(),
        bound,
        points,
        singular_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ProjPoint {
        s.parse().unwrap()
    }

    #[test]
    fn projective_normalization() {
        assert_eq!(pt("(2 : 4 : 2)"), pt("1:2:1"));
        assert_eq!(pt("(3 : 6 : 0)"), pt("(1 : 2 : 0)"));
        assert_eq!(pt("(0 : 5 : 0)").to_string(), "(0 : 1 : 0)");
        assert!("(0:0:0)".parse::<ProjPoint>().is_err());
    }

    #[test]
    fn circle_has_pythagorean_point() {
        let c: PlaneCurve = "x^2 + y^2 - 1".parse().unwrap();
        let r = search_points(&c, 5).unwrap();
        assert!(r.points.contains(&pt("(3 : 4 : 5)")));
        assert!(r.points.iter().all(|p| p.is_affine()));
    }

    #[test]
    fn definite_form_has_nothing() {
        let c: PlaneCurve = "x^2 + y^2 + 1".parse().unwrap();
        assert!(search_points(&c, 30).unwrap().points.is_empty());
    }

    #[test]
    fn example_model_points() {
        let c: PlaneCurve = "x^4 + 36x^3 + 270x^2 - xy^5 - 5xy^4 - 40xy^3 + 756x + 729".parse().unwrap();
        let r = search_points(&c, 256).unwrap();
        let want: Vec<ProjPoint> = ["(-81:-13:1)", "(-27:0:1)", "(-9:2:1)", "(-3:0:1)", "(1:0:0)", "(0:1:0)"]
            .iter()
            .map(|s| pt(s))
            .collect();
        let mut want = want;
        want.sort();
        assert_eq!(r.points, want);
    }

    #[test]
    fn singular_point_flagged() {
        // Node at the origin.
        let c: PlaneCurve = "y^2 - x^3 - x^2".parse().unwrap();
        let r = search_points(&c, 3).unwrap();
        let i = r.points.iter().position(|p| *p == pt("0:0:1")).unwrap();
        assert!(r.singular_flags[i]);
        assert_eq!(r.singular_flags.iter().filter(|f| **f).count(), 1);
    }

    #[test]
    fn json_shape() {
        let c: PlaneCurve = "x^2 + y^2 - 1".parse().unwrap();
        let v = serde_json::to_value(search_points(&c, 1).unwrap()).unwrap();
        assert_eq!(v["points"][0].as_array().unwrap().len(), 3);
        assert!(v["singular_flags"].is_array());
    }
}
