use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

use super::mat::{divisors, gl2_order, units, MatZN};

/// A subgroup of GL2(Z/nZ) with its full element set, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Subgroup {
    n: u32,
    gens: Vec<MatZN>,
    elements: Vec<MatZN>,
}

/// Output of the genus formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusData {
    pub genus: u32,
    pub index_psl2: u32,
    pub e2: u32,
    pub e3: u32,
    pub cusps: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub level: u32,
    pub index: u64,
    pub genus: u32,
    pub det_surjective: bool,
    pub contains_minus_i: bool,
    pub cusp_count: u32,
}

fn bfs_closure(n: u32, gens: &[MatZN]) -> Vec<MatZN> {
    let id = MatZN::identity(n);
    let mut seen: HashSet<MatZN> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<MatZN> = seen.into_iter().collect();
    v.sort_unstable();
    v
}

/// Closure of `gens`, or `None` as soon as it exceeds `cap` elements.
pub fn closure_capped(n: u32, gens: &[MatZN], cap: usize) -> Option<Gl2Subgroup> {
    let id = MatZN::identity(n);
    let mut seen: HashSet<MatZN> = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<MatZN> = seen.into_iter().collect();
    elements.sort_unstable();
    Some(Gl2Subgroup {
        n,
        gens: gens.to_vec(),
        elements,
    })
}

fn check_gens(n: u32, gens: &[MatZN]) -> Result<()> {
    for g in gens {
        if g.n != n {
            return Err(Error::ModulusMismatch(n, g.n));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible(format!("{n}:{g}")));
        }
    }
    Ok(())
}

/// Subgroup generated by `gens` inside GL2(Z/nZ).
pub fn closure(n: u32, gens: &[MatZN]) -> Result<Gl2Subgroup> {
    check_gens(n, gens)?;
    Ok(Gl2Subgroup {
        n,
        gens: gens.to_vec(),
        elements: bfs_closure(n, gens),
    })
}

impl Gl2Subgroup {
    /// Builds a group from a set already known to be a subgroup; a small
    /// generating set is chosen greedily.
    pub fn from_elements(n: u32, elements: impl IntoIterator<Item = MatZN>) -> Self {
        let mut elements: Vec<MatZN> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        let gens = greedy_generators(n, &elements);
        debug_assert_eq!(bfs_closure(n, &gens), elements);
        Gl2Subgroup { n, gens, elements }
    }

    /// All of GL2(Z/nZ).
    pub fn full(n: u32) -> Self {
        Self::from_predicate(n, |_| true)
    }

    /// Elements of GL2(Z/nZ) satisfying `keep`; `keep` must cut out a subgroup.
    pub fn from_predicate(n: u32, keep: impl Fn(&MatZN) -> bool) -> Self {
        let r = 0..n as i64;
        let mut els = Vec::new();
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let m = MatZN::new(n, a, b, c, d);
                        if m.is_invertible() && keep(&m) {
                            els.push(m);
                        }
                    }
                }
            }
        }
        Self::from_elements(n, els)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn generators(&self) -> &[MatZN] {
        &self.gens
    }

    pub fn elements(&self) -> &[MatZN] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn index(&self) -> u64 {
        gl2_order(self.n) / self.order()
    }

    pub fn contains(&self, m: &MatZN) -> bool {
        self.elements.binary_search(m).is_ok()
    }

    pub fn det_surjective(&self) -> bool {
        let dets: BTreeSet<u32> = self.elements.iter().map(|m| m.det()).collect();
        let us = units(self.n);
        if self.n == 1 {
            return true;
        }
        us.iter().all(|u| dets.contains(u))
    }

    pub fn contains_minus_i(&self) -> bool {
        self.contains(&MatZN::minus_identity(self.n))
    }

    /// `<H, -I>`.
    pub fn with_minus_i(&self) -> Gl2Subgroup {
        if self.contains_minus_i() {
            return self.clone();
        }
        let mut els = self.elements.clone();
        els.extend(self.elements.iter().map(|m| m.neg()));
        let mut gens = self.gens.clone();
        gens.push(MatZN::minus_identity(self.n));
        els.sort_unstable();
        Gl2Subgroup {
            n: self.n,
            gens,
            elements: els,
        }
    }

    /// Image under reduction mod `m`, for `m | n`.
    pub fn reduce(&self, m: u32) -> Gl2Subgroup {
        let els: BTreeSet<MatZN> = self.elements.iter().map(|x| x.reduce(m)).collect();
        let mut gens: Vec<MatZN> = self.gens.iter().map(|x| x.reduce(m)).collect();
        gens.sort_unstable();
        gens.dedup();
        Gl2Subgroup {
            n: m,
            gens,
            elements: els.into_iter().collect(),
        }
    }

    /// Full preimage in GL2(Z/nZ) for a multiple `n` of the modulus.
    pub fn preimage(&self, n: u32) -> Gl2Subgroup {
        let m = self.n;
        assert!(n % m == 0, "{m} does not divide {n}");
        let k = (n / m) as i64;
        let mut els = Vec::new();
        for h in &self.elements {
            for i in 0..k.pow(4) {
                let (x, y, z, w) = (i % k, (i / k) % k, (i / k / k) % k, i / k / k / k);
                let mm = m as i64;
                let g = MatZN::new(n, h.a as i64 + mm * x, h.b as i64 + mm * y, h.c as i64 + mm * z, h.d as i64 + mm * w);
                if g.is_invertible() {
                    els.push(g);
                }
            }
        }
        Self::from_elements(n, els)
    }

    pub fn conjugate(&self, g: &MatZN) -> Gl2Subgroup {
        let gi = g.inverse();
        let conj = |h: &MatZN| g.mul(h).mul(&gi);
        let mut els: Vec<MatZN> = self.elements.iter().map(conj).collect();
        els.sort_unstable();
        Gl2Subgroup {
            n: self.n,
            gens: self.gens.iter().map(conj).collect(),
            elements: els,
        }
    }

    /// Smallest `M | N` such that the group is the full preimage of its
    /// reduction mod `M`.
    pub fn level(&self) -> u32 {
        for m in divisors(self.n) {
            let reduced = self.reduce(m).order() as u128;
            if self.order() as u128 * gl2_order(m) as u128 == reduced * gl2_order(self.n) as u128 {
                return m;
            }
        }
        self.n
    }

    /// Genus of X_H through the action of SL2(Z/N) on right cosets of
    /// `Gamma = <H, -I> ∩ SL2`.
    pub fn genus(&self) -> Result<GenusData> {
        if !self.det_surjective() {
            return Err(Error::NotDetSurjective);
        }
        let n = self.n;
        if n == 1 {
            return Ok(GenusData {
                genus: 0,
                index_psl2: 1,
                e2: 1,
                e3: 1,
                cusps: 1,
            });
        }
        let gamma: Vec<MatZN> = self
            .with_minus_i()
            .elements
            .iter()
            .filter(|m| m.det() == 1)
            .copied()
            .collect();
        let key = |g: &MatZN| gamma.iter().map(|x| x.mul(g)).min().unwrap();

        let s = MatZN::new(n, 0, -1, 1, 0);
        let t = MatZN::new(n, 1, 1, 0, 1);
        let u = MatZN::new(n, 0, -1, 1, -1);

        let id = MatZN::identity(n);
        let mut reps = vec![id];
        let mut index: HashMap<MatZN, usize> = HashMap::from([(key(&id), 0)]);
        let mut i = 0;
        while i < reps.len() {
            for g in [&s, &t] {
                let h = reps[i].mul(g);
                let k = key(&h);
                if !index.contains_key(&k) {
                    index.insert(k, reps.len());
                    reps.push(h);
                }
            }
            i += 1;
        }
        let action = |g: &MatZN| -> Vec<usize> { reps.iter().map(|r| index[&key(&r.mul(g))]).collect() };
        let (ps, pt, pu) = (action(&s), action(&t), action(&u));
        let psi = reps.len() as i64;
        let e2 = ps.iter().enumerate().filter(|(i, j)| i == *j).count() as i64;
        let e3 = pu.iter().enumerate().filter(|(i, j)| i == *j).count() as i64;
        let mut seen = vec![false; reps.len()];
        let mut cusps = 0i64;
        for start in 0..reps.len() {
            if seen[start] {
                continue;
            }
            cusps += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = pt[x];
            }
        }
        // 12 g = 12 + psi - 3 e2 - 4 e3 - 6 c
        let twelve_g = 12 + psi - 3 * e2 - 4 * e3 - 6 * cusps;
        if twelve_g < 0 || twelve_g % 12 != 0 {
            return Err(Error::Genus(format!("{twelve_g}/12")));
        }
        Ok(GenusData {
            genus: (twelve_g / 12) as u32,
            index_psl2: psi as u32,
            e2: e2 as u32,
            e3: e3 as u32,
            cusps: cusps as u32,
        })
    }

    pub fn invariants(&self) -> Result<GroupInvariants> {
        let g = self.genus()?;
        Ok(GroupInvariants {
            level: self.level(),
            index: self.index(),
            genus: g.genus,
            det_surjective: self.det_surjective(),
            contains_minus_i: self.contains_minus_i(),
            cusp_count: g.cusps,
        })
    }

    /// True iff every `g` outside H generates all of GL2(Z/N) together with
    /// H. One `g` per double coset `HgH` is tried.
    pub fn is_maximal_in_ambient(&self) -> bool {
        let full = gl2_order(self.n);
        if self.order() == full {
            return false;
        }
        let ambient = Gl2Subgroup::full(self.n);
        let mut covered: HashSet<MatZN> = self.elements.iter().copied().collect();
        for g in ambient.elements() {
            if covered.contains(g) {
                continue;
            }
            let mut gens = self.gens.clone();
            gens.push(*g);
            if bfs_closure(self.n, &gens).len() as u64 != full {
                return false;
            }
            for h1 in &self.elements {
                let hg = h1.mul(g);
                for h2 in &self.elements {
                    covered.insert(hg.mul(h2));
                }
            }
        }
        true
    }

    /// Text record `N:[[a,b,c,d],...]` listing the generators.
    pub fn to_record(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        format!("{}:[{}]", self.n, gens.join(","))
    }
}

fn greedy_generators(n: u32, elements: &[MatZN]) -> Vec<MatZN> {
    let mut gens = Vec::new();
    let mut current: HashSet<MatZN> = HashSet::from([MatZN::identity(n)]);
    for g in elements {
        if current.len() == elements.len() {
            break;
        }
        if !current.contains(g) {
            gens.push(*g);
            current = bfs_closure(n, &gens).into_iter().collect();
        }
    }
    gens
}

impl fmt::Display for Gl2Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_record())
    }
}

impl FromStr for Gl2Subgroup {
    type Err = Error;

    /// Parses `N:[[a,b,c,d],...]` and takes the closure.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(1, format!("generator record: {msg}"));
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: u32 = n.trim().parse().map_err(|_| bad("modulus is not an integer"))?;
        if n == 0 {
            return Err(bad("modulus must be positive"));
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("expected [[...],...]"))?;
        let mut gens = Vec::new();
        for chunk in body.split(']') {
            let chunk = chunk.trim().trim_start_matches(',').trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk.strip_prefix('[').ok_or_else(|| bad("expected '['"))?;
            let xs: Vec<i64> = inner
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("entries must be integers"))?;
            if xs.len() != 4 {
                return Err(bad("each matrix needs four entries"));
            }
            gens.push(MatZN::new(n, xs[0], xs[1], xs[2], xs[3]));
        }
        closure(n, &gens)
    }
}

/// The subgroup of GL2(Z/N1N2) reducing into `h1` mod N1 and `h2` mod N2.
pub fn fiber_product(h1: &Gl2Subgroup, h2: &Gl2Subgroup) -> Result<Gl2Subgroup> {
    let (n1, n2) = (h1.n, h2.n);
    if num::integer::gcd(n1, n2) != 1 {
        return Err(Error::NotCoprime(n1, n2));
    }
    let mut els = Vec::with_capacity(h1.elements.len() * h2.elements.len());
    for x in &h1.elements {
        for y in &h2.elements {
            els.push(MatZN::crt(x, y));
        }
    }
    els.sort_unstable();
    let (i1, i2) = (MatZN::identity(n1), MatZN::identity(n2));
    let mut gens: Vec<MatZN> = h1.gens.iter().map(|g| MatZN::crt(g, &i2)).collect();
    gens.extend(h2.gens.iter().map(|g| MatZN::crt(&i1, g)));
    Ok(Gl2Subgroup {
        n: n1 * n2,
        gens,
        elements: els,
    })
}

/// Upper-triangular matrices mod `n`.
pub fn borel(n: u32) -> Gl2Subgroup {
    Gl2Subgroup::from_predicate(n, |m| m.c == 0)
}

/// Diagonal matrices mod `n`.
pub fn split_cartan(n: u32) -> Gl2Subgroup {
    Gl2Subgroup::from_predicate(n, |m| m.b == 0 && m.c == 0)
}

pub fn split_cartan_normalizer(n: u32) -> Gl2Subgroup {
    Gl2Subgroup::from_predicate(n, |m| (m.b == 0 && m.c == 0) || (m.a == 0 && m.d == 0))
}

fn nonresidue(p: u32) -> u32 {
    (2..p)
        .find(|&e| crate::arith::legendre(e as i64, p as u64) == -1)
        .expect("odd prime has a nonresidue")
}

fn ns_prime(n: u32) -> u32 {
    let ps = super::mat::prime_divisors(n);
    assert!(ps.len() == 1, "nonsplit Cartan needs a prime-power modulus, got {n}");
    ps[0]
}

/// Nonsplit Cartan mod a prime power `n`: `{[[a, b e], [b, a]]}` for odd
/// `p` with `e` a nonresidue, and `{a I + b W}` with `W = [[0,-1],[1,-1]]`
/// for powers of 2.
pub fn nonsplit_cartan(n: u32) -> Gl2Subgroup {
    let p = ns_prime(n);
    if p == 2 {
        // a I + b W = [[a, -b], [b, a - b]]
        Gl2Subgroup::from_predicate(n, |m| (m.b + m.c) % n == 0 && (m.d + m.c) % n == m.a)
    } else {
        let e = nonresidue(p) as u64;
        Gl2Subgroup::from_predicate(n, |m| m.a == m.d && (m.c as u64 * e) % n as u64 == m.b as u64)
    }
}

/// Normalizer of the nonsplit Cartan.
pub fn nonsplit_cartan_normalizer(n: u32) -> Gl2Subgroup {
    let p = ns_prime(n);
    let c = nonsplit_cartan(n);
    let extra = if p == 2 {
        MatZN::new(n, 1, -1, 0, -1)
    } else {
        MatZN::new(n, 1, 0, 0, -1)
    };
    let mut gens = c.gens.clone();
    gens.push(extra);
    let g = closure(n, &gens).expect("valid generators");
    Gl2Subgroup::from_elements(n, g.elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_examples() {
        let triv = closure(2, &[MatZN::identity(2)]).unwrap();
        assert_eq!(triv.order(), 1);
        let b3 = closure(3, &[MatZN::new(3, 1, 1, 0, 1), MatZN::new(3, 2, 0, 0, 1), MatZN::new(3, 1, 0, 0, 2)]).unwrap();
        assert_eq!((b3.order(), b3.index()), (12, 4));
        let ns2 = nonsplit_cartan(2);
        assert_eq!((ns2.order(), ns2.index()), (3, 2));
        assert!(closure(4, &[MatZN::new(4, 2, 0, 0, 1)]).is_err());
        assert!(closure(4, &[MatZN::new(5, 1, 0, 0, 1)]).is_err());
    }

    #[test]
    fn det_and_minus_identity() {
        let g5 = Gl2Subgroup::full(5);
        assert!(g5.det_surjective() && g5.contains_minus_i());
        assert!(closure(2, &[MatZN::identity(2)]).unwrap().contains_minus_i());
        let sl2 = Gl2Subgroup::from_predicate(5, |m| m.det() == 1);
        assert!(!sl2.det_surjective());
    }

    #[test]
    fn levels() {
        assert_eq!(borel(3).preimage(9).level(), 3);
        assert_eq!(Gl2Subgroup::full(8).level(), 1);
        assert_eq!(borel(5).level(), 5);
    }

    #[test]
    fn cartan_orders() {
        assert_eq!(nonsplit_cartan_normalizer(3).order(), 16);
        assert_eq!(nonsplit_cartan_normalizer(4).order(), 24);
        assert_eq!(nonsplit_cartan_normalizer(5).order(), 48);
        assert_eq!(split_cartan_normalizer(5).order(), 32);
        assert_eq!(borel(5).order(), 80);
    }

    #[test]
    fn genus_of_small_curves() {
        for h in [borel(2), borel(3), borel(5), nonsplit_cartan(2), nonsplit_cartan_normalizer(3)] {
            assert_eq!(h.genus().unwrap().genus, 0);
        }
        let x0_15 = fiber_product(&borel(3), &borel(5)).unwrap();
        assert_eq!(x0_15.index(), 24);
        assert_eq!(x0_15.genus().unwrap().genus, 1);
        let x0_10 = fiber_product(&borel(2), &borel(5)).unwrap();
        assert_eq!(x0_10.index(), 18);
        assert_eq!(x0_10.order(), closure(10, x0_10.generators()).unwrap().order());
        assert_eq!(x0_10.genus().unwrap().genus, 0);
        assert_eq!(x0_10.genus().unwrap().cusps, 4);
    }

    #[test]
    fn maximality() {
        assert!(borel(5).is_maximal_in_ambient());
        assert!(!closure(3, &[]).unwrap().is_maximal_in_ambient());
        assert!(!Gl2Subgroup::full(3).is_maximal_in_ambient());
    }

    #[test]
    fn record_round_trip() {
        let h = nonsplit_cartan_normalizer(4);
        let r = h.to_record();
        let back: Gl2Subgroup = r.parse().unwrap();
        assert_eq!(back.elements(), h.elements());
        assert!("4:[[1,0,0]]".parse::<Gl2Subgroup>().is_err());
    }
}
