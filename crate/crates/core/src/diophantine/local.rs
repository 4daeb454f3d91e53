use std::fmt;
use std::str::FromStr;

use num::integer::Integer;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::UniPoly;
use crate::arith::{is_prime_u64, legendre, valuation};
use crate::error::{Error, Result};

use super::plane::PlaneCurve;

pub const DEFAULT_MAX_DEPTH: u32 = 12;

/// `y^2 = f(x)` with integral `f` of degree 2 to 6 and no repeated roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    // Lowest degree first.
    f: Vec<BigInt>,
}

impl HyperellipticModel {
    /// Coefficients from the leading one down.
    pub fn new(coeffs: &[BigInt]) -> Result<Self> {
        let mut f: Vec<BigInt> = coeffs.iter().rev().cloned().collect();
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        let deg = f.len().saturating_sub(1);
        if !(2..=6).contains(&deg) {
            return Err(Error::InvalidArgument(format!("degree {deg} is outside 2..=6")));
        }
        let poly = UniPoly::from_bigints(&f);
        if poly.gcd(&poly.derivative()).degree() != Some(0) {
            return Err(Error::InvalidArgument("f has a repeated factor".into()));
        }
        Ok(HyperellipticModel { f })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.f
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `u^n f(1/u)` with `n` the degree rounded up to even, so that the
    /// chart `x = 1/u, y = v/u^(n/2)` covers the points at infinity.
    fn reversed(&self) -> Vec<BigInt> {
        let n = self.degree().div_ceil(2) * 2;
        let mut r = vec![BigInt::zero(); n + 1];
        for (i, c) in self.f.iter().enumerate() {
            r[n - i] = c.clone();
        }
        r
    }
}

impl fmt::Display for HyperellipticModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = {}", UniPoly::from_bigints(&self.f).fmt_with('x'))
    }
}

impl FromStr for HyperellipticModel {
    type Err = Error;

    /// Comma-separated integers, leading coefficient first.
    fn from_str(s: &str) -> Result<Self> {
        let mut cs = Vec::new();
        let mut col = 1;
        for part in s.split(',') {
            let c: BigInt = part
                .trim()
                .parse()
                .map_err(|_| Error::parse(col, format!("not an integer: {:?}", part.trim())))?;
            cs.push(c);
            col += part.len() + 1;
        }
        HyperellipticModel::new(&cs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalResult {
    Solvable,
    Empty,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Affine,
    Infinity,
}

/// An integer `x` (or `u = 1/x` on the infinity branch) whose value under
/// `f` is a nonzero p-adic square or zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub branch: Branch,
    pub x: String,
    pub value_valuation: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSolvabilityCertificate {
    pub p: u64,
    pub result: LocalResult,
    pub witness: Option<LocalWitness>,
    pub depth: u32,
}

/// `f(c + s t)` for polynomial `f` given lowest degree first.
fn shift(f: &[BigInt], c: &BigInt, s: &BigInt) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = Vec::new();
    for coef in f.iter().rev() {
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            next[i] += a * c;
            next[i + 1] += a * s;
        }
        next[0] += coef;
        acc = next;
    }
    acc
}

fn is_unit_square(n: &BigInt, p: u64) -> bool {
    let r = n.mod_floor(&BigInt::from(p)).to_i64().unwrap();
    legendre(r, p) == 1
}

/// Nonzero `n` is a square in Q_p (p odd) iff its valuation is even and its
/// unit part is a square mod p.
fn is_qp_square(n: &BigRational, p: u64) -> bool {
    if n.is_zero() {
        return true;
    }
    let vn = valuation(n.numer(), p).unwrap() as i64;
    let vd = valuation(n.denom(), p).unwrap() as i64;
    if (vn - vd) % 2 != 0 {
        return false;
    }
    let pb = BigInt::from(p);
    let un = n.numer() / num::pow(pb.clone(), vn as usize);
    let ud = n.denom() / num::pow(pb, vd as usize);
    legendre((un * ud).mod_floor(&BigInt::from(p)).to_i64().unwrap(), p) == 1
}

enum Disc {
    Found(BigInt, Option<u32>),
    Empty,
    Undecided,
}

struct Explorer<'a> {
    f: &'a [BigInt],
    p: u64,
    max_depth: u32,
    deepest: u32,
}

impl Explorer<'_> {
    /// Searches the disc `center + p^k Z_p`.
    fn explore(&mut self, center: &BigInt, k: u32) -> Disc {
        self.deepest = self.deepest.max(k);
        let pb = BigInt::from(self.p);
        let g = shift(self.f, center, &num::pow(pb.clone(), k as usize));
        if g[0].is_zero() {
            return Disc::Found(center.clone(), None);
        }
        let v0 = valuation(&g[0], self.p).unwrap();
        let rest = g[1..].iter().filter_map(|c| valuation(c, self.p)).min();
        if rest.is_none_or(|m| v0 < m) {
            // f is g0 times a principal unit on the whole disc.
            if v0 % 2 == 1 {
                return Disc::Empty;
            }
            let unit = &g[0] / num::pow(pb, v0 as usize);
            return if is_unit_square(&unit, self.p) {
                Disc::Found(center.clone(), Some(v0))
            } else {
                Disc::Empty
            };
        }
        if k >= self.max_depth {
            return Disc::Undecided;
        }
        let step = num::pow(pb, k as usize);
        let mut undecided = false;
        for r in 0..self.p {
            match self.explore(&(center + &step * BigInt::from(r)), k + 1) {
                found @ Disc::Found(..) => return found,
                Disc::Undecided => undecided = true,
                Disc::Empty => {}
            }
        }
        if undecided {
            Disc::Undecided
        } else {
            Disc::Empty
        }
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// Decides whether `y^2 = f(x)` has a Q_p-point by subdividing residue discs
/// of `Z_p` and of the chart at infinity.
pub fn local_solvable_hyperelliptic(
    h: &HyperellipticModel,
    p: u64,
    max_depth: u32,
) -> Result<LocalSolvabilityCertificate> {
    check_odd_prime(p)?;
    let rev = h.reversed();
    let branches: [(Branch, &[BigInt], u32); 2] = [(Branch::Affine, &h.f, 0), (Branch::Infinity, &rev, 1)];
    let mut undecided = false;
    let mut depth = 0;
    for (branch, f, k0) in branches {
        let mut ex = Explorer {
            f,
            p,
            max_depth,
            deepest: 0,
        };
        let outcome = ex.explore(&BigInt::zero(), k0);
        depth = depth.max(ex.deepest);
        match outcome {
            Disc::Found(x, v) => {
                return Ok(LocalSolvabilityCertificate {
                    p,
                    result: LocalResult::Solvable,
                    witness: Some(LocalWitness {
                        branch,
                        x: x.to_string(),
                        value_valuation: v,
                    }),
                    depth,
                })
            }
            Disc::Undecided => undecided = true,
            Disc::Empty => {}
        }
    }
    Ok(LocalSolvabilityCertificate {
        p,
        result: if undecided {
            LocalResult::Inconclusive
        } else {
            LocalResult::Empty
        },
        witness: None,
        depth,
    })
}

/// Re-checks a certificate from scratch. A solvable certificate must carry
/// a witness at which `f` is a p-adic square; other results are recomputed.
pub fn verify_certificate(h: &HyperellipticModel, cert: &LocalSolvabilityCertificate) -> bool {
    match (&cert.result, &cert.witness) {
        (LocalResult::Solvable, Some(w)) => {
            let Ok(x) = w.x.parse::<BigInt>() else {
                return false;
            };
            let xq = BigRational::from_integer(x);
            let value = match w.branch {
                Branch::Affine => h.eval(&xq),
                Branch::Infinity => {
                    let rev = h.reversed();
                    rev.iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &xq + BigRational::from_integer(c.clone()))
                }
            };
            is_qp_square(&value, cert.p)
        }
        (LocalResult::Solvable, None) => false,
        _ => local_solvable_hyperelliptic(h, cert.p, cert.depth.max(1))
            .is_ok_and(|again| again.result == cert.result),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LocalPlaneResult {
    /// An integral point of `F` mod `p^k` satisfying `v(F) > 2 min v(dF)`
    /// in its affine chart, so it lifts to a Q_p-point.
    SmoothPoint {
        point: [String; 3],
        value_valuation: Option<u32>,
        gradient_valuation: u32,
    },
    NoneFound {
        depth: u32,
    },
}

fn eval_int(hom: &[((u32, u32, u32), BigInt)], p: &[BigInt; 3], d: Option<usize>) -> BigInt {
    let mut acc = BigInt::zero();
    for ((i, j, k), c) in hom {
        let mut e = [*i, *j, *k];
        let mut term = c.clone();
        if let Some(v) = d {
            if e[v] == 0 {
                continue;
            }
            term *= BigInt::from(e[v]);
            e[v] -= 1;
        }
        for (x, n) in p.iter().zip(e) {
            if n > 0 {
                term *= num::pow(x.clone(), n as usize);
            }
        }
        acc += term;
    }
    acc
}

/// Scans the three standard affine charts of `P^2(Z/p^k)` for a point that
/// lifts by Hensel's lemma. Not finding one proves nothing.
pub fn local_points_plane(curve: &PlaneCurve, p: u64, k: u32) -> Result<LocalPlaneResult> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidArgument(format!("p = {p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    let hom = curve.homogeneous_terms();
    let m = p.checked_pow(k).filter(|m| *m <= 1 << 12).ok_or_else(|| {
        Error::InvalidArgument(format!("p^k = {p}^{k} is too large to scan"))
    })?;
    for fixed in [2usize, 1, 0] {
        let free: Vec<usize> = (0..3).filter(|&v| v != fixed).collect();
        for a in 0..m {
            for b in 0..m {
                let mut pt = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
                pt[fixed] = BigInt::one();
                pt[free[0]] = BigInt::from(a);
                pt[free[1]] = BigInt::from(b);
                let value = eval_int(hom, &pt, None);
                let grad = free
                    .iter()
                    .filter_map(|&v| valuation(&eval_int(hom, &pt, Some(v)), p))
                    .min();
                let Some(g) = grad else { continue };
                let lifts = match valuation(&value, p) {
                    None => true,
                    Some(v) => v > 2 * g,
                };
                if lifts {
                    return Ok(LocalPlaneResult::SmoothPoint {
                        point: pt.map(|c| c.to_string()),
                        value_valuation: valuation(&value, p),
                        gradient_valuation: g,
                    });
                }
            }
        }
    }
    Ok(LocalPlaneResult::NoneFound { depth: k })
}

impl LocalPlaneResult {
    pub fn found(&self) -> bool {
        matches!(self, LocalPlaneResult::SmoothPoint { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sextic() -> HyperellipticModel {
        "6,-9,-18,33,9,-36,-12".parse().unwrap()
    }

    #[test]
    fn sextic_empty_over_q3() {
        let c = local_solvable_hyperelliptic(&sextic(), 3, DEFAULT_MAX_DEPTH).unwrap();
        assert_eq!(c.result, LocalResult::Empty);
        assert!(c.depth <= DEFAULT_MAX_DEPTH);
        assert!(verify_certificate(&sextic(), &c));
    }

    #[test]
    fn x6_plus_1_solvable() {
        let h = HyperellipticModel::from_ints(&[1, 0, 0, 0, 0, 0, 1]).unwrap();
        let c = local_solvable_hyperelliptic(&h, 3, 12).unwrap();
        assert_eq!(c.result, LocalResult::Solvable);
        assert_eq!(c.witness.as_ref().unwrap().x, "0");
        assert!(verify_certificate(&h, &c));
    }

    #[test]
    fn odd_valuation_everywhere() {
        let h = HyperellipticModel::from_ints(&[3, 0, 0, 0, 0, 0, 3]).unwrap();
        assert_eq!(local_solvable_hyperelliptic(&h, 3, 12).unwrap().result, LocalResult::Empty);
    }

    #[test]
    fn odd_degree_has_point_at_infinity() {
        let h = HyperellipticModel::from_ints(&[3, 0, 0, 0, 0, 3]).unwrap();
        let c = local_solvable_hyperelliptic(&h, 3, 12).unwrap();
        assert_eq!(c.result, LocalResult::Solvable);
        assert!(verify_certificate(&h, &c));
    }

    #[test]
    fn forged_witness_rejected() {
        let h = sextic();
        let forged = LocalSolvabilityCertificate {
            p: 3,
            result: LocalResult::Solvable,
            witness: Some(LocalWitness {
                branch: Branch::Affine,
                x: "1".into(),
                value_valuation: Some(0),
            }),
            depth: 1,
        };
        assert!(!verify_certificate(&h, &forged));
    }

    #[test]
    fn model_validation() {
        assert!(HyperellipticModel::from_ints(&[1, 0, 0]).is_err());
        assert!(HyperellipticModel::from_ints(&[1, 0, 0, 0, 0, 0, 0, 1]).is_err());
        assert!(matches!("1,x,2".parse::<HyperellipticModel>(), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn plane_local_points() {
        let j0: PlaneCurve = "y^2 - x^3 - 1".parse().unwrap();
        assert!(local_points_plane(&j0, 3, 1).unwrap().found());
        let aniso: PlaneCurve = "x^2 + y^2 - 3".parse().unwrap();
        assert_eq!(local_points_plane(&aniso, 3, 2).unwrap(), LocalPlaneResult::NoneFound { depth: 2 });
    }
}
