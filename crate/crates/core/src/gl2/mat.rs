use std::fmt;

use crate::arith::inv_mod;

/// A 2x2 matrix `[[a, b], [c, d]]` over Z/nZ. Ordering is by modulus, then
/// row-major entries, which fixes coset numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatZN {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

fn red(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

impl MatZN {
    /// Reduces the entries mod `n`; does not check invertibility.
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        MatZN {
            n,
            a: red(a, n),
            b: red(b, n),
            c: red(c, n),
            d: red(d, n),
        }
    }

    pub fn identity(n: u32) -> Self {
        Self::new(n, 1, 0, 0, 1)
    }

    pub fn minus_identity(n: u32) -> Self {
        Self::new(n, -1, 0, 0, -1)
    }

    pub fn entries(&self) -> [u32; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> u32 {
        let n = self.n as u64;
        ((self.a as u64 * self.d as u64 + n * n - (self.b as u64 * self.c as u64) % n) % n) as u32
    }

    pub fn trace(&self) -> u32 {
        ((self.a as u64 + self.d as u64) % self.n as u64) as u32
    }

    pub fn is_invertible(&self) -> bool {
        num::integer::gcd(self.det(), self.n) == 1
    }

    pub fn mul(&self, o: &MatZN) -> MatZN {
        debug_assert_eq!(self.n, o.n);
        let n = self.n as u64;
        let f = |x: u32, y: u32, z: u32, w: u32| ((x as u64 * y as u64 + z as u64 * w as u64) % n) as u32;
        MatZN {
            n: self.n,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    /// Panics if the matrix is not invertible.
    pub fn inverse(&self) -> MatZN {
        let n = self.n as u64;
        if n == 1 {
            return *self;
        }
        let di = inv_mod(self.det() as u64, n).expect("matrix is not invertible");
        let s = |x: u32| ((x as u64 * di) % n) as i64;
        MatZN::new(self.n, s(self.d), -s(self.b), -s(self.c), s(self.a))
    }

    pub fn neg(&self) -> MatZN {
        MatZN::new(self.n, -(self.a as i64), -(self.b as i64), -(self.c as i64), -(self.d as i64))
    }

    /// Reduction modulo a divisor `m` of `n`.
    pub fn reduce(&self, m: u32) -> MatZN {
        assert!(self.n % m == 0, "{m} does not divide {}", self.n);
        MatZN::new(m, self.a as i64, self.b as i64, self.c as i64, self.d as i64)
    }

    /// The matrix mod `n1 * n2` reducing to `x` mod `n1` and `y` mod `n2`.
    pub fn crt(x: &MatZN, y: &MatZN) -> MatZN {
        let (n1, n2) = (x.n as u64, y.n as u64);
        let n = n1 * n2;
        // e1 = 1 mod n1, 0 mod n2; e2 the other way around.
        let e1 = if n1 == 1 { 0 } else { n2 * inv_mod(n2 % n1, n1).expect("moduli not coprime") % n };
        let e2 = (n + 1 - e1) % n;
        let f = |u: u32, v: u32| ((u as u64 * e1 + v as u64 * e2) % n) as i64;
        MatZN::new(n as u32, f(x.a, y.a), f(x.b, y.b), f(x.c, y.c), f(x.d, y.d))
    }
}

impl fmt::Display for MatZN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.a, self.b, self.c, self.d)
    }
}

/// `|GL2(Z/nZ)| = n^4 prod_{p | n} (1 - 1/p)(1 - 1/p^2)`.
pub fn gl2_order(n: u32) -> u64 {
    let mut order = (n as u64).pow(4);
    for p in prime_divisors(n) {
        let p = p as u64;
        order = order / (p * p * p) * (p - 1) * (p * p - 1);
    }
    order
}

pub fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn units(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| num::integer::gcd(u, n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let m = MatZN::new(9, 2, 5, 1, 8);
        assert!(m.is_invertible());
        assert_eq!(m.mul(&m.inverse()), MatZN::identity(9));
        assert_eq!(m.det(), (16 - 5) % 9);
    }

    #[test]
    fn crt_reduces_correctly() {
        let x = MatZN::new(8, 3, 1, 0, 5);
        let y = MatZN::new(9, 2, 7, 4, 4);
        let z = MatZN::crt(&x, &y);
        assert_eq!(z.n, 72);
        assert_eq!(z.reduce(8), x);
        assert_eq!(z.reduce(9), y);
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(gl2_order(2), 6);
        assert_eq!(gl2_order(3), 48);
        assert_eq!(gl2_order(5), 480);
        assert_eq!(gl2_order(8), 1536);
        assert_eq!(gl2_order(9), 3888);
        assert_eq!(gl2_order(1), 1);
    }
}
