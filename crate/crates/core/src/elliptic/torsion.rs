use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::algebra::{int, rational_roots, UniPoly};
use crate::arith::{factor, primes_up_to};

use super::{EllCurve, Point};

/// gcd of `#E(F_p)` over good primes `5 <= p <= 200`; a multiple of the
/// order of the rational torsion subgroup.
pub fn torsion_bound(e: &EllCurve) -> u64 {
    let mut g = 0u64;
    let mut used = 0;
    let mut limit = 200;
    loop {
        for p in primes_up_to(limit).into_iter().filter(|&p| p >= 5) {
            if let Ok(n) = e.count_points(p) {
                g = g.gcd(&n);
                used += 1;
            }
        }
        if used >= 10 || limit > 100_000 {
            return g;
        }
        used = 0;
        g = 0;
        limit *= 4;
    }
}

/// Square divisors `y^2 | n`, returned as the positive `y`.
fn square_divisor_roots(n: &BigInt) -> Vec<BigInt> {
    let mut ys = vec![BigInt::one()];
    for (p, e) in factor(n) {
        let mut next = Vec::new();
        for y in &ys {
            let mut pk = BigInt::one();
            for _ in 0..=e / 2 {
                next.push(y * &pk);
                pk *= &p;
            }
        }
        ys = next;
    }
    ys.sort();
    ys
}

/// All rational torsion points, including the point at infinity, sorted.
pub fn torsion_points(e: &EllCurve) -> Vec<Point> {
    let bound = torsion_bound(e);
    if bound == 1 {
        return vec![Point::Infinity];
    }
    // Integral short model Y^2 = X^3 + A u^4 X + B u^6.
    let (a, b) = e.short_coefficients();
    let u = a.denom().lcm(b.denom());
    let ur = BigRational::from_integer(u.clone());
    let u2 = &ur * &ur;
    let u3 = &u2 * &ur;
    let ai = (&a * &u2 * &u2).to_integer();
    let bi = (&b * &u3 * &u3).to_integer();
    let short = EllCurve::short(BigRational::from_integer(ai.clone()), BigRational::from_integer(bi.clone()))
        .expect("isomorphic model is nonsingular");

    let d = (BigInt::from(4) * &ai * &ai * &ai + BigInt::from(27) * &bi * &bi).abs();
    let cubic = |y2: &BigInt| {
        UniPoly::from_bigints(&[&bi - y2, ai.clone(), BigInt::zero(), BigInt::one()])
    };
    let mut found = vec![Point::Infinity];
    let mut ys = vec![BigInt::zero()];
    for y in square_divisor_roots(&d) {
        ys.push(-&y);
        ys.push(y);
    }
    for y in ys {
        let roots = rational_roots(&cubic(&(&y * &y))).expect("monic cubic is nonzero");
        for x in roots.into_iter().filter(|x| x.is_integer()) {
            let p = Point::Affine(x, BigRational::from_integer(y.clone()));
            if let Some(k) = short.order_up_to(&p, 16) {
                if bound % k as u64 == 0 {
                    found.push(p);
                }
            }
        }
    }

    // Back to the original model.
    let mut out: Vec<Point> = found
        .into_iter()
        .map(|p| match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(xs, ys) => {
                let big_x = xs / &u2;
                let big_y = ys / &u3;
                let x = (big_x - int(3) * &e.b2) / int(36);
                let y = (big_y / int(108) - &e.a1 * &x - &e.a3) / int(2);
                Point::Affine(x, y)
            }
        })
        .collect();
    debug_assert!(out.iter().all(|p| e.contains(p)));
    out.sort();
    out
}
