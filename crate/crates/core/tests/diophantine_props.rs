use std::collections::BTreeSet;

use num::{BigRational, Zero};
use proptest::prelude::*;

use galois_atlas::algebra::BiPoly;
use galois_atlas::diophantine::{
    local_points_plane, local_solvable_hyperelliptic, search_points, verify_certificate, HyperellipticModel,
    LocalResult, LocalSolvabilityCertificate, PlaneCurve, ProjPoint, SearchResult,
};

const ODD_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];

fn plane_model(h: &HyperellipticModel) -> PlaneCurve {
    let text = h.to_string();
    let rhs = text.split_once('=').unwrap().1;
    let f: BiPoly = format!("y^2 - ({rhs})").parse().unwrap();
    PlaneCurve::new(&f).unwrap()
}

fn hyperelliptic() -> impl Strategy<Value = HyperellipticModel> {
    (2usize..=6)
        .prop_flat_map(|deg| prop::collection::vec(-6i64..=6, deg + 1))
        .prop_filter_map("not squarefree", |mut cs| {
            if cs[0] == 0 {
                cs[0] = 1;
            }
            HyperellipticModel::from_ints(&cs).ok()
        })
}

fn plane_curve() -> impl Strategy<Value = PlaneCurve> {
    prop::collection::vec(((0u32..=3, 0u32..=3), -5i64..=5), 2..=6).prop_filter_map("degenerate", |terms| {
        let f = BiPoly::from_terms(terms.into_iter().map(|(m, c)| (m, BigRational::from_integer(c.into()))));
        if f.degree_x().unwrap_or(0) == 0 || f.degree_y().unwrap_or(0) == 0 {
            return None;
        }
        PlaneCurve::new(&f).ok()
    })
}

fn point_set(r: &SearchResult) -> BTreeSet<ProjPoint> {
    r.points.iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_is_exact_and_monotone(c in plane_curve(), h1 in 1u64..=12, extra in 0u64..=12) {
        let small = search_points(&c, h1).unwrap();
        let big = search_points(&c, h1 + extra).unwrap();
        for p in &big.points {
            prop_assert!(c.contains(p), "{} not on {}", p, c);
            prop_assert!(p.height() <= (h1 + extra).into());
        }
        prop_assert!(point_set(&small).is_subset(&point_set(&big)));
        let text = serde_json::to_string(&big).unwrap();
        let back: SearchResult = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, big);
    }

    #[test]
    fn certificates_reverify(h in hyperelliptic(), p in prop::sample::select(ODD_PRIMES.to_vec())) {
        let c = local_solvable_hyperelliptic(&h, p, 8).unwrap();
        prop_assert!(verify_certificate(&h, &c), "{:?}", c);
        let text = serde_json::to_string(&c).unwrap();
        let back: LocalSolvabilityCertificate = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &c);
        if c.result == LocalResult::Solvable {
            let mut forged = c.clone();
            forged.result = LocalResult::Empty;
            prop_assert!(!verify_certificate(&h, &forged));
        }
    }

    /// A rational point found by search is a Q_p-point for every p.
    #[test]
    fn rational_points_imply_local_points(h in hyperelliptic()) {
        let found = search_points(&plane_model(&h), 24).unwrap();
        if found.affine_points().next().is_some() {
            for p in ODD_PRIMES {
                let c = local_solvable_hyperelliptic(&h, p, 12).unwrap();
                prop_assert_eq!(c.result, LocalResult::Solvable, "p = {}", p);
            }
        }
        for pt in found.affine_points() {
            let [x, y, _] = pt.coords();
            prop_assert_eq!(h.eval(x), y * y);
        }
    }

    /// An affine smooth rational point with integral coordinates shows up
    /// in the plane scan at every p.
    #[test]
    fn plane_scan_sees_integral_smooth_points(c in plane_curve(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let found = search_points(&c, 6).unwrap();
        let integral_smooth = found.affine_points().any(|pt| {
            pt.coords().iter().all(|v| v.is_integer()) && !c.is_singular_at(pt)
        });
        let scan = local_points_plane(&c, p, 2).unwrap();
        if integral_smooth {
            let grad_units = found.affine_points().any(|pt| {
                let [x, y, _] = pt.coords();
                let fx = c.poly().partial_x().eval(x, y);
                let fy = c.poly().partial_y().eval(x, y);
                let unit = |v: &BigRational| !v.is_zero() && !(v.numer() % p).is_zero();
                pt.coords().iter().all(|v| v.is_integer()) && (unit(&fx) || unit(&fy))
            });
            if grad_units {
                prop_assert!(scan.found());
            }
        }
    }
}

#[test]
fn sextic_is_empty_over_q3() {
    let h = HyperellipticModel::from_ints(&[6, -9, -18, 33, 9, -36, -12]).unwrap();
    let c = local_solvable_hyperelliptic(&h, 3, 12).unwrap();
    assert_eq!(c.result, LocalResult::Empty);
    assert!(search_points(&plane_model(&h), 40).unwrap().affine_points().next().is_none());
    for p in ODD_PRIMES {
        assert!(verify_certificate(&h, &local_solvable_hyperelliptic(&h, p, 12).unwrap()));
    }
}
