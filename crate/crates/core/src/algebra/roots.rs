//! Rational roots of polynomials over Q without factoring coefficients.
//!
//! A rational root `r/s` in lowest terms of a primitive integer polynomial
//! has `|r| <= |a_0|` and `|s| <= |a_n|`. We pick a prime `p` at which every
//! root of `f mod p` is simple, lift each one `p`-adically past
//! `2 (|a_0|+1)(|a_n|+1)` and recover the unique small fraction by the
//! half extended Euclidean algorithm. Each candidate is checked exactly.

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::arith::primes_up_to;
use crate::error::{Error, Result};

use super::UniPoly;

/// Distinct rational roots of `f`, in increasing order.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<BigRational>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let ints = strip_zero_root(f.primitive_integer(), &mut out);
    // Most inputs have a good prime without any gcd; only a repeated
    // rational root forces the squarefree part.
    let roots = match integer_poly_roots(&ints, Some(1 << 12)) {
        Some(r) => r,
        None => {
            let g = strip_zero_root(f.squarefree_part().primitive_integer(), &mut Vec::new());
            integer_poly_roots(&g, None).expect("squarefree input has a good prime")
        }
    };
    out.extend(roots);
    out.sort();
    out.dedup();
    Ok(out)
}

/// Drops factors of `t`, recording the root 0.
fn strip_zero_root(mut cs: Vec<BigInt>, out: &mut Vec<BigRational>) -> Vec<BigInt> {
    let k = cs.iter().take_while(|c| c.is_zero()).count();
    if k > 0 {
        out.push(BigRational::zero());
        cs.drain(..k);
    }
    cs
}

/// True when the nonzero polynomial `f` has a rational root.
pub fn has_rational_root(f: &UniPoly) -> bool {
    rational_roots(f).is_ok_and(|r| !r.is_empty())
}

fn eval_mod(cs: &[u64], x: u64, p: u64) -> u64 {
    cs.iter().rev().fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % p as u128) as u64)
}

fn reduce(cs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    cs.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn derivative_ints(cs: &[BigInt]) -> Vec<BigInt> {
    cs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

fn eval_int(cs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    cs.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

/// Roots mod `p` of `cs`, provided `p` does not divide the leading
/// coefficient and each root is simple.
fn simple_roots_mod(cs: &[BigInt], dcs: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let r = reduce(cs, p);
    if *r.last().unwrap() == 0 {
        return None;
    }
    let dr = reduce(dcs, p);
    let mut roots = Vec::new();
    for x in 0..p {
        if eval_mod(&r, x, p) == 0 {
            if eval_mod(&dr, x, p) == 0 {
                return None;
            }
            roots.push(x);
        }
    }
    Some(roots)
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Smallest `r/t` with `|r| <= n`, `|t| <= d` and `r = t u mod m`, if any.
fn reconstruct(u: &BigInt, m: &BigInt, n: &BigInt, d: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > n {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *d {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rational roots of a primitive integer polynomial with nonzero constant
/// term (coefficients lowest degree first), or `None` if no prime below
/// `give_up` has only simple roots mod p.
fn integer_poly_roots(cs: &[BigInt], give_up: Option<u64>) -> Option<Vec<BigRational>> {
    if cs.len() < 2 {
        return Some(Vec::new());
    }
    let a0 = cs[0].abs();
    let lc = cs.last().unwrap().abs();
    let dcs = derivative_ints(cs);
    let bound = BigInt::from(2) * (&a0 + 1u32) * (&lc + 1u32);

    let mut chosen = None;
    let mut limit = 1 << 10;
    while chosen.is_none() {
        // Any squarefree f has only finitely many bad primes, so this ends.
        for p in primes_up_to(limit).into_iter().skip(1) {
            if let Some(rs) = simple_roots_mod(cs, &dcs, p) {
                chosen = Some((p, rs));
                break;
            }
        }
        if give_up.is_some_and(|g| limit >= g) {
            break;
        }
        limit *= 4;
    }
    let (p, roots) = chosen?;
    let pb = BigInt::from(p);
    let poly = UniPoly::from_bigints(cs);

    let mut out = Vec::new();
    for r in roots {
        let mut u = BigInt::from(r);
        let mut m = pb.clone();
        while m <= bound {
            m = &m * &m;
            let fu = eval_int(cs, &u, &m);
            let du = eval_int(&dcs, &u, &m);
            u = (&u - fu * inverse_mod(&du, &m)).mod_floor(&m);
        }
        if let Some(q) = reconstruct(&u, &m, &a0, &lc) {
            if poly.eval(&q).is_zero() {
                out.push(q);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, int};

    fn roots_of(s: &str) -> Vec<BigRational> {
        rational_roots(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn simple_cases() {
        assert_eq!(roots_of("t^2 - 1"), vec![int(-1), int(1)]);
        assert_eq!(roots_of("t^2 + 1"), vec![]);
        assert_eq!(roots_of("t^3(2t-3)^2(t+7)"), vec![int(-7), int(0), frac(3, 2)]);
        assert_eq!(roots_of("6t^2 - t - 1"), vec![frac(-1, 3), frac(1, 2)]);
        assert_eq!(roots_of("5"), vec![]);
    }

    #[test]
    fn x0_5_preimage() {
        // j = -2^-3*5^2*241^3 has the preimage t = -40 on X0(5).
        let j = crate::algebra::rational::parse_rational("-2^-3*5^2*241^3").unwrap();
        let f: UniPoly = "(t^2+10t+5)^3".parse().unwrap();
        let g = &f - &UniPoly::x().scale(&j);
        assert!(rational_roots(&g).unwrap().contains(&int(-40)));
    }

    #[test]
    fn large_coefficients() {
        // Roots with numerators and denominators far beyond machine words.
        let a = BigRational::new(
            "123456789012345678901234567".parse().unwrap(),
            "98765432109876543211".parse().unwrap(),
        );
        let b = frac(-17, 1_000_003);
        let f = &(&UniPoly::x() - &UniPoly::constant(a.clone()))
            * &(&UniPoly::x() - &UniPoly::constant(b.clone()));
        let f = &f * &"t^2 + t + 1".parse::<UniPoly>().unwrap();
        assert_eq!(rational_roots(&f).unwrap(), vec![b, a]);
        assert!(rational_roots(&UniPoly::zero()).is_err());
    }
}
