use std::collections::BTreeSet;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use galois_atlas::algebra::Extended;
use galois_atlas::arith::primes_up_to;
use galois_atlas::atlas::Atlas;
use galois_atlas::elliptic::{CurveInput, EllCurve};
use galois_atlas::galois::{
    analyze, candidate_classes, mod2_surjective_exact, nonsurjective_ell_adic, trace_sieve, SieveStatus,
};
use galois_atlas::Error;

fn atlas() -> &'static Atlas {
    Atlas::embedded()
}

fn usable(j: &BigRational) -> bool {
    !atlas().is_cm(j) && !j.is_zero() && *j != BigRational::from_integer(1728.into())
}

fn table_records() -> Vec<usize> {
    (0..atlas().records.len()).filter(|&i| !atlas().records[i].auxiliary).collect()
}

fn t_value() -> impl Strategy<Value = BigRational> {
    (-200i64..=200, 1i64..=30).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Every j on a table curve is caught at its prime, and every witness
    /// returned evaluates back to j.
    #[test]
    fn constructed_js_are_nonsurjective(i in prop::sample::select(table_records()), t in t_value()) {
        let r = &atlas().records[i];
        let Extended::Finite(j) = r.jmap.eval_at(&t) else { return Ok(()) };
        prop_assume!(usable(&j));
        let v = nonsurjective_ell_adic(&j, r.ell, atlas()).unwrap();
        prop_assert!(v.nonsurjective);
        prop_assert!(!v.witnesses.is_empty());
        for w in &v.witnesses {
            let rec = atlas().record(&w.label).unwrap();
            prop_assert_eq!(rec.ell, r.ell);
            prop_assert_eq!(rec.jmap.eval(&w.t), Extended::Finite(j.clone()));
        }
        prop_assert!(v.witnesses.iter().any(|w| w.label == r.label));
    }
}

fn curve() -> impl Strategy<Value = EllCurve> {
    prop::array::uniform5(-12i64..=12)
        .prop_filter_map("singular or CM", |a| EllCurve::from_ints(a).ok().filter(|e| usable(&e.j)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn verdicts_are_twist_invariant(e in curve(), d in prop::sample::select(vec![-1i64, 2, -3, 5, -6, 7, -10, 13])) {
        let et = e.quadratic_twist(&BigInt::from(d)).unwrap();
        let a = analyze(&CurveInput::Curve(e.clone()), atlas(), 100);
        let b = analyze(&CurveInput::Curve(et.clone()), atlas(), 100);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(&a.verdicts, &b.verdicts);
                prop_assert_eq!(a.smallest_surjective_prime, b.smallest_surjective_prime);
            }
            (Err(Error::TheoremViolation(x)), Err(Error::TheoremViolation(y))) => prop_assert_eq!(x, y),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a.err(), b.err()),
        }
        prop_assert_eq!(mod2_surjective_exact(&e), mod2_surjective_exact(&et));
    }

    /// The sieve certifies exactly when no candidate class contains every
    /// sampled (trace, det) pair.
    #[test]
    fn sieve_matches_recomputed_pairs(e in curve(), bound in 20u64..400) {
        let status = trace_sieve(&e, 7, bound).unwrap();
        let mut seen = BTreeSet::new();
        let mut covered = false;
        for p in primes_up_to(bound).into_iter().filter(|&p| p >= 5 && p != 7 && e.has_good_reduction(p)) {
            let ap = e.a_p(p).unwrap();
            seen.insert((ap.rem_euclid(7) as u32, (p % 7) as u32));
            if candidate_classes(7).iter().all(|c| !seen.is_subset(&c.pairs)) {
                covered = true;
                break;
            }
        }
        prop_assert_eq!(status.is_certified(), covered);
        if let SieveStatus::NonsurjectiveCandidate { classes, .. } | SieveStatus::Inconclusive { classes, .. } = &status {
            prop_assert!(!classes.is_empty());
        }
    }
}

/// For curves whose mod-l image is known to lie in a proper subgroup, the
/// trace sieve mod l must never certify surjectivity.
#[test]
fn sieve_never_certifies_known_nonsurjective_mod_3_and_5() {
    let mut checked = 0;
    for r in atlas().records.iter().filter(|r| !r.auxiliary && r.level == r.ell && r.ell != 2) {
        for n in -8i64..=8 {
            for d in [1i64, 2, 3] {
                let t = BigRational::new(n.into(), d.into());
                let Extended::Finite(j) = r.jmap.eval_at(&t) else { continue };
                if !usable(&j) {
                    continue;
                }
                assert!(nonsurjective_ell_adic(&j, r.ell, atlas()).unwrap().nonsurjective);
                let e = EllCurve::from_j(&j).unwrap();
                let s = trace_sieve(&e, r.ell, 600).unwrap();
                assert!(!s.is_certified(), "{} at t = {t}: {s:?}", r.label);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn generic_curve_certifies_mod_5_and_7_but_not_3() {
    // 37a1 is surjective at every prime, but mod 3 traces cannot show it.
    let e = EllCurve::from_ints([0, 0, 1, -1, 0]).unwrap();
    for ell in [5, 7] {
        assert!(trace_sieve(&e, ell, 2000).unwrap().is_certified(), "ell = {ell}");
    }
    assert!(!trace_sieve(&e, 3, 2000).unwrap().is_certified());
}

#[test]
fn six_js_need_seven() {
    for j in &atlas().exceptional_j {
        let r = analyze(&CurveInput::J(j.clone()), atlas(), 2000).unwrap();
        assert_eq!(r.nonsurjective_primes(), vec![2, 3, 5]);
        assert_eq!(r.smallest_surjective_prime, 7);
        assert!(r.mod7.is_certified());
    }
}

#[test]
fn report_json_round_trips() {
    let r = analyze(&"1,0,1,-126,-552".parse().unwrap(), atlas(), 500).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, BTreeSet::from(["j", "cm", "verdicts", "mod7", "smallest_surjective_prime"]));
    assert_eq!(v["mod7"]["status"], "surjective-certified-by-sieve");
    let back = serde_json::from_str(&text).unwrap();
    assert_eq!(r, back);
}
