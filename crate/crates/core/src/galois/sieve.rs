//! Heuristic mod-l surjectivity from Frobenius traces.
//!
//! If the mod-l image sits inside a subgroup H, every Frobenius at a good
//! prime p has a conjugate in H, so `(a_p mod l, p mod l)` is one of the
//! `(trace, det)` pairs of H. A class of subgroups is eliminated as soon as
//! a sampled pair falls outside its set.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime_u64, primes_up_to};
use crate::elliptic::EllCurve;
use crate::error::{Error, Result};
use crate::gl2::{
    borel, closure_capped, gl2_order, nonsplit_cartan_normalizer, split_cartan_normalizer, Gl2Subgroup, MatZN,
};

/// A conjugacy-stable summary of a proper det-surjective subgroup of GL2(F_l).
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub name: String,
    pub order: u64,
    pub pairs: BTreeSet<(u32, u32)>,
    /// Fraction of GL2(F_l) whose (trace, det) lies in `pairs`.
    pub density: f64,
    fingerprint: Vec<((u32, u32), u32)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub name: String,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SieveStatus {
    SurjectiveCertifiedBySieve {
        primes_used: usize,
        last_prime: u64,
    },
    NonsurjectiveCandidate {
        classes: Vec<ClassSummary>,
        primes_used: usize,
    },
    Inconclusive {
        classes: Vec<ClassSummary>,
        primes_used: usize,
    },
}

impl SieveStatus {
    pub fn is_certified(&self) -> bool {
        matches!(self, SieveStatus::SurjectiveCertifiedBySieve { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SieveStatus::SurjectiveCertifiedBySieve { .. } => "surjective-certified-by-sieve",
            SieveStatus::NonsurjectiveCandidate { .. } => "nonsurjective-candidate",
            SieveStatus::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Survivor probability below which a surviving class is reported as a
/// nonsurjective candidate rather than as an inconclusive tie.
pub const CANDIDATE_THRESHOLD: f64 = 1e-6;
pub const MIN_P_BOUND: u64 = 20;
const RANDOM_DRAWS: usize = 600;
const EXCEPTIONAL_DRAWS: usize = 4000;
const SEED: u64 = 0x5eed_0007;
const CHUNK: usize = 32;

fn fingerprint(h: &Gl2Subgroup) -> Vec<((u32, u32), u32)> {
    let mut m: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for g in h.elements() {
        *m.entry((g.trace(), g.det())).or_default() += 1;
    }
    m.into_iter().collect()
}

fn pair_counts(ell: u32) -> HashMap<(u32, u32), u64> {
    let mut m = HashMap::new();
    for a in 0..ell {
        for b in 0..ell {
            for c in 0..ell {
                for d in 0..ell {
                    let g = MatZN::new(ell, a as i64, b as i64, c as i64, d as i64);
                    if g.is_invertible() {
                        *m.entry((g.trace(), g.det())).or_insert(0) += 1;
                    }
                }
            }
        }
    }
    m
}

fn random_element(rng: &mut ChaCha8Rng, ell: u32) -> MatZN {
    loop {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..ell as i64));
        let g = MatZN::new(ell, e[0], e[1], e[2], e[3]);
        if g.is_invertible() {
            return g;
        }
    }
}

fn primitive_root(ell: u32) -> u32 {
    (2..ell)
        .find(|&g| (1..ell - 1).all(|k| crate::arith::pow_mod(g as u64, k as u64, ell as u64) != 1))
        .unwrap_or(1)
}

/// A det-surjective group with projective image S4. It exists only for
/// `l = 3, 5 mod 8`; otherwise S4 lies in PSL2 and the determinants are
/// all squares.
fn exceptional_s4(rng: &mut ChaCha8Rng, ell: u32) -> Option<Gl2Subgroup> {
    if ell < 5 || !matches!(ell % 8, 3 | 5) {
        return None;
    }
    let g = primitive_root(ell) as i64;
    let scalar = MatZN::new(ell, g, 0, 0, g);
    let order = 24 * (ell as usize - 1);
    for _ in 0..EXCEPTIONAL_DRAWS {
        let gens = [random_element(rng, ell), random_element(rng, ell), scalar];
        if let Some(h) = closure_capped(ell, &gens, order) {
            if h.elements().len() == order && h.det_surjective() {
                return Some(h);
            }
        }
    }
    None
}

/// Proper det-surjective subgroup classes of GL2(F_l): the Borel, the
/// Cartan normalizers and the exceptional S4 when it is det-surjective,
/// plus whatever random two-generator closures turn up.
pub fn candidate_classes(ell: u32) -> Arc<Vec<SubgroupClass>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<SubgroupClass>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&ell) {
        return v.clone();
    }
    let classes = Arc::new(build_classes(ell));
    cache.lock().unwrap().insert(ell, classes.clone());
    classes
}

fn build_classes(ell: u32) -> Vec<SubgroupClass> {
    assert!(is_prime_u64(ell as u64) && ell >= 3, "trace sieve needs an odd prime, got {ell}");
    let full = gl2_order(ell);
    let mut groups: Vec<(String, Gl2Subgroup)> = vec![
        ("Borel".into(), borel(ell)),
        ("normalizer of split Cartan".into(), split_cartan_normalizer(ell)),
        ("normalizer of nonsplit Cartan".into(), nonsplit_cartan_normalizer(ell)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ell as u64);
    if let Some(h) = exceptional_s4(&mut rng, ell) {
        groups.push(("exceptional S4".into(), h));
    }
    // Every maximal proper det-surjective subgroup is one of the above.
    let cap = groups.iter().map(|(_, h)| h.order()).max().unwrap() as usize;

    for _ in 0..RANDOM_DRAWS {
        let gens = [random_element(&mut rng, ell), random_element(&mut rng, ell)];
        if let Some(h) = closure_capped(ell, &gens, cap) {
            if h.det_surjective() && h.order() < full {
                groups.push((format!("subgroup of order {}", h.order()), h));
            }
        }
    }

    let counts = pair_counts(ell);
    let mut seen: HashMap<(u64, Vec<((u32, u32), u32)>), usize> = HashMap::new();
    let mut out: Vec<SubgroupClass> = Vec::new();
    for (name, h) in groups {
        if !h.det_surjective() {
            continue;
        }
        let fp = fingerprint(&h);
        let key = (h.order(), fp.clone());
        if seen.contains_key(&key) {
            continue;
        }
        let pairs: BTreeSet<(u32, u32)> = fp.iter().map(|(k, _)| *k).collect();
        let hits: u64 = pairs.iter().map(|k| counts[k]).sum();
        seen.insert(key, out.len());
        out.push(SubgroupClass {
            name,
            order: h.order(),
            pairs,
            density: hits as f64 / full as f64,
            fingerprint: fp,
        });
    }
    out.sort_by(|a, b| b.order.cmp(&a.order).then_with(|| a.fingerprint.cmp(&b.fingerprint)));
    out
}

/// Runs the trace sieve mod `ell` on good primes `5 <= p <= p_bound`, `p != ell`.
pub fn trace_sieve(e: &EllCurve, ell: u32, p_bound: u64) -> Result<SieveStatus> {
    if p_bound < MIN_P_BOUND {
        return Err(Error::SampleTooSmall(p_bound));
    }
    let classes = candidate_classes(ell);
    let l = ell as u64;
    let primes: Vec<u64> = primes_up_to(p_bound)
        .into_iter()
        .filter(|&p| p >= 5 && p != l && e.has_good_reduction(p))
        .collect();

    let mut alive: Vec<bool> = vec![true; classes.len()];
    let mut used = 0;
    for chunk in primes.chunks(CHUNK) {
        let pairs: Vec<(u32, u32)> = chunk
            .par_iter()
            .map(|&p| {
                let ap = e.a_p(p).expect("good reduction checked");
                (ap.rem_euclid(ell as i64) as u32, (p % l) as u32)
            })
            .collect();
        for (pair, &p) in pairs.iter().zip(chunk) {
            used += 1;
            for (c, a) in classes.iter().zip(alive.iter_mut()) {
                if *a && !c.pairs.contains(pair) {
                    *a = false;
                }
            }
            if alive.iter().all(|a| !a) {
                return Ok(SieveStatus::SurjectiveCertifiedBySieve {
                    primes_used: used,
                    last_prime: p,
                });
            }
        }
    }
    let survivors: Vec<&SubgroupClass> = classes.iter().zip(&alive).filter(|(_, a)| **a).map(|(c, _)| c).collect();
    let summaries: Vec<ClassSummary> = survivors
        .iter()
        .map(|c| ClassSummary {
            name: c.name.clone(),
            order: c.order,
        })
        .collect();
    let max_density = survivors.iter().map(|c| c.density).fold(0.0, f64::max);
    if max_density.powi(used as i32) < CANDIDATE_THRESHOLD {
        Ok(SieveStatus::NonsurjectiveCandidate {
            classes: summaries,
            primes_used: used,
        })
    } else {
        Ok(SieveStatus::Inconclusive {
            classes: summaries,
            primes_used: used,
        })
    }
}

/// The mod-7 sieve.
pub fn mod7_sieve(e: &EllCurve, p_bound: u64) -> Result<SieveStatus> {
    trace_sieve(e, 7, p_bound)
}
