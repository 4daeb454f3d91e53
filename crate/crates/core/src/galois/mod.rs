//! Surjectivity of l-adic and mod-l Galois representations.
//!
//! For l in {2, 3, 5} the verdict is exact: the image is not all of
//! GL2(Z_l) iff j is a rational value of the j-map of one of the maximal
//! genus-0 curves in the atlas. Mod 7 only a trace sieve is available.

mod sieve;

pub use sieve::{
    candidate_classes, mod7_sieve, trace_sieve, ClassSummary, SieveStatus, SubgroupClass, CANDIDATE_THRESHOLD,
    MIN_P_BOUND,
};

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, rational_roots, Extended, UniPoly};
use crate::arith::is_rational_square;
use crate::atlas::{Atlas, ModularCurveRecord};
use crate::elliptic::{CurveInput, EllCurve};
use crate::error::{Error, Result};

/// A rational point `t` on the curve `label` lying over the given j.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub t: Extended,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllAdicVerdict {
    pub ell: u32,
    pub nonsurjective: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaloisReport {
    #[serde(with = "crate::algebra::rational::serde_rational")]
    pub j: BigRational,
    pub cm: bool,
    pub verdicts: Vec<EllAdicVerdict>,
    pub mod7: SieveStatus,
    pub smallest_surjective_prime: u32,
}

impl GaloisReport {
    pub fn nonsurjective_primes(&self) -> Vec<u32> {
        self.verdicts.iter().filter(|v| v.nonsurjective).map(|v| v.ell).collect()
    }

    pub fn verdict(&self, ell: u32) -> Option<&EllAdicVerdict> {
        self.verdicts.iter().find(|v| v.ell == ell)
    }
}

pub const DEFAULT_P_BOUND: u64 = 10_000;

fn reject_cm(j: &BigRational, atlas: &Atlas) -> Result<()> {
    if atlas.is_cm(j) || j.is_zero() || *j == int(1728) {
        return Err(Error::CmInput(j.clone()));
    }
    Ok(())
}

/// All `t` in P^1(Q) with `j_H(t) = j`.
pub fn preimages(record: &ModularCurveRecord, j: &BigRational) -> Vec<Extended> {
    let f = record.jmap.num() - &(record.jmap.den() * &UniPoly::constant(j.clone()));
    let mut out: Vec<Extended> = match rational_roots(&f) {
        Ok(roots) => roots.into_iter().map(Extended::Finite).collect(),
        // j_H is nonconstant, so this only happens if num = j * den identically.
        Err(_) => Vec::new(),
    };
    if record.jmap.eval(&Extended::Infinity) == Extended::Finite(j.clone()) {
        out.push(Extended::Infinity);
    }
    out
}

/// Exact l-adic verdict for `l` in {2, 3, 5}.
pub fn nonsurjective_ell_adic(j: &BigRational, ell: u32, atlas: &Atlas) -> Result<EllAdicVerdict> {
    reject_cm(j, atlas)?;
    if !matches!(ell, 2 | 3 | 5) {
        return Err(Error::InvalidArgument(format!("exact verdicts exist for l = 2, 3, 5, not {ell}")));
    }
    let witnesses: Vec<Witness> = atlas
        .records_for(ell)
        .flat_map(|r| {
            preimages(r, j).into_iter().map(|t| Witness {
                label: r.label.clone(),
                t,
            })
        })
        .collect();
    Ok(EllAdicVerdict {
        ell,
        nonsurjective: !witnesses.is_empty(),
        witnesses,
    })
}

/// Whether the mod-2 image is all of GL2(F_2) = S_3: the 2-division
/// cubic is irreducible and its discriminant is not a square.
pub fn mod2_surjective_exact(e: &EllCurve) -> bool {
    // 4x^3 + b2 x^2 + 2 b4 x + b6, whose discriminant is 16 disc(E).
    let cubic = UniPoly::from_coeffs(vec![e.b6.clone(), int(2) * &e.b4, e.b2.clone(), int(4)]);
    let has_root = !rational_roots(&cubic).expect("cubic is nonzero").is_empty();
    !has_root && !is_rational_square(&e.disc)
}

/// Full report: exact verdicts at 2, 3, 5, the mod-7 sieve, and the
/// smallest surjective prime.
pub fn analyze(input: &CurveInput, atlas: &Atlas, p_bound: u64) -> Result<GaloisReport> {
    let j = input.j().clone();
    reject_cm(&j, atlas)?;
    if p_bound < MIN_P_BOUND {
        return Err(Error::SampleTooSmall(p_bound));
    }
    let verdicts = [2, 3, 5]
        .into_iter()
        .map(|ell| nonsurjective_ell_adic(&j, ell, atlas))
        .collect::<Result<Vec<_>>>()?;
    let e = input.curve()?;
    let mod7 = mod7_sieve(&e, p_bound)?;
    let smallest = match verdicts.iter().find(|v| !v.nonsurjective) {
        Some(v) => v.ell,
        None => {
            if !atlas.is_exceptional(&j) {
                return Err(Error::TheoremViolation(j));
            }
            7
        }
    };
    Ok(GaloisReport {
        j,
        cm: false,
        verdicts,
        mod7,
        smallest_surjective_prime: smallest,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_rational;

    fn atlas() -> &'static Atlas {
        Atlas::embedded()
    }

    #[test]
    fn fifty_a1_witness_on_x0_5() {
        let j = parse_rational("-2^-3*5^2*241^3").unwrap();
        let v = nonsurjective_ell_adic(&j, 5, atlas()).unwrap();
        assert!(v.witnesses.contains(&Witness {
            label: "5.6.0.1".into(),
            t: Extended::Finite(int(-40)),
        }));
    }

    #[test]
    fn x0_2_at_one_is_cm() {
        // 255^3 has CM by Z[(1 + sqrt(-7))/2], so only the raw preimage is usable.
        let j = int(255 * 255 * 255);
        let r = atlas().record("X_0(2)").unwrap();
        assert!(preimages(r, &j).contains(&Extended::Finite(int(1))));
        assert!(matches!(nonsurjective_ell_adic(&j, 2, atlas()), Err(Error::CmInput(_))));
        let j = int(258 * 258 * 258) / int(4);
        let v = nonsurjective_ell_adic(&j, 2, atlas()).unwrap();
        assert!(v.witnesses.contains(&Witness {
            label: "2.3.0.1".into(),
            t: Extended::Finite(int(-2)),
        }));
    }

    #[test]
    fn infinity_is_checked() {
        let r = atlas().record("5.10.0.1").unwrap();
        assert!(preimages(r, &int(8000)).contains(&Extended::Infinity));
    }

    #[test]
    fn cm_rejected() {
        for j in [int(0), int(1728), int(-3375)] {
            assert!(matches!(nonsurjective_ell_adic(&j, 2, atlas()), Err(Error::CmInput(_))));
        }
    }

    #[test]
    fn smallest_three() {
        let j = parse_rational("-2^-10*3^3*5^4*11^3*17^3").unwrap();
        let r = analyze(&CurveInput::J(j), atlas(), 200).unwrap();
        assert_eq!(r.nonsurjective_primes(), vec![2, 5]);
        assert_eq!(r.smallest_surjective_prime, 3);
    }

    #[test]
    fn mod2_examples() {
        assert!(mod2_surjective_exact(&EllCurve::from_ints([0, 0, 0, 0, -2]).unwrap()));
        assert!(!mod2_surjective_exact(&EllCurve::from_ints([0, 0, 0, -1, 0]).unwrap()));
        // x^3 + x + 1 is irreducible with discriminant -31.
        assert!(mod2_surjective_exact(&EllCurve::from_ints([0, 0, 0, 1, 1]).unwrap()));
    }

    #[test]
    fn report_json_shape() {
        let e = EllCurve::from_ints([1, 0, 1, -126, -552]).unwrap();
        let r = analyze(&CurveInput::Curve(e), atlas(), 2000).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for k in ["j", "cm", "verdicts", "mod7", "smallest_surjective_prime"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let back: GaloisReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
