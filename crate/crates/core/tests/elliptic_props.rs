use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use galois_atlas::arith::{primes_up_to, rational_mod_p};
use galois_atlas::elliptic::{torsion_points, EllCurve, Point};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// #E(F_p) by scanning every (x, y), reducing the long model mod p.
fn naive_count(e: &EllCurve, p: u64) -> Option<u64> {
    let a: Vec<i64> = e
        .a_invariants()
        .iter()
        .map(|c| rational_mod_p(c, p).map(|v| v as i64))
        .collect::<Option<_>>()?;
    let p = p as i64;
    let mut n = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + a[1] * x % p * x + a[3] * x + a[4]) % p;
        for y in 0..p {
            let lhs = (y * y + a[0] * x % p * y + a[2] * y) % p;
            if (lhs - rhs).rem_euclid(p) == 0 {
                n += 1;
            }
        }
    }
    Some(n)
}

fn euler_symbol(d: i64, p: u64) -> i64 {
    let (p, d) = (p as i64, d.rem_euclid(p as i64));
    if d == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (d, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

fn curve() -> impl Strategy<Value = EllCurve> {
    prop::array::uniform5(-9i64..=9).prop_filter_map("singular", |a| EllCurve::from_ints(a).ok())
}

/// A curve through two chosen rational points with distinct x.
fn curve_with_points() -> impl Strategy<Value = (EllCurve, Point, Point)> {
    (
        prop::array::uniform3(-3i64..=3),
        prop::array::uniform4(-6i64..=6),
        1i64..=3,
    )
        .prop_filter_map("degenerate", |(a, pts, den)| {
            let (x1, y1, x2, y2) = (q(pts[0], den), q(pts[1], 1), q(pts[2], 1), q(pts[3], den));
            if x1 == x2 {
                return None;
            }
            let (a1, a2, a3) = (q(a[0], 1), q(a[1], 1), q(a[2], 1));
            let rest = |x: &BigRational, y: &BigRational| {
                y * y + &a1 * x * y + &a3 * y - x * x * x - &a2 * x * x
            };
            let (r1, r2) = (rest(&x1, &y1), rest(&x2, &y2));
            let a4 = (&r1 - &r2) / (&x1 - &x2);
            let a6 = &r1 - &a4 * &x1;
            let e = EllCurve::new(a1, a2, a3, a4, a6).ok()?;
            Some((e, Point::Affine(x1, y1), Point::Affine(x2, y2)))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn point_counts_agree_with_full_scan(e in curve()) {
        for p in primes_up_to(50).into_iter().filter(|&p| p >= 5 && e.has_good_reduction(p)) {
            prop_assert_eq!(Some(e.count_points(p).unwrap()), naive_count(&e, p), "p = {}", p);
            let ap = e.a_p(p).unwrap();
            prop_assert!((ap * ap) as u64 <= 4 * p);
        }
    }

    #[test]
    fn twist_law(e in curve(), d in prop::sample::select(vec![-1i64, 2, -2, 3, -3, 5, -5, 6, -6, 7, -7, 10, 11, -13])) {
        let et = e.quadratic_twist(&BigInt::from(d)).unwrap();
        prop_assert_eq!(&et.j, &e.j);
        for p in primes_up_to(100).into_iter().filter(|&p| p >= 5 && d % p as i64 != 0) {
            if !e.has_good_reduction(p) || !et.has_good_reduction(p) {
                continue;
            }
            let (Some(n), Some(nt)) = (naive_count(&e, p), naive_count(&et, p)) else { continue };
            let (ap, apt) = (p as i64 + 1 - n as i64, p as i64 + 1 - nt as i64);
            prop_assert_eq!(apt, euler_symbol(d, p) * ap, "p = {}", p);
            prop_assert_eq!(et.a_p(p).unwrap(), apt);
        }
    }

    #[test]
    fn group_law_is_associative((e, p1, p2) in curve_with_points()) {
        prop_assert!(e.contains(&p1) && e.contains(&p2));
        let p3 = e.add(&p1, &e.mul(2, &p2));
        let lhs = e.add(&e.add(&p1, &p2), &p3);
        let rhs = e.add(&p1, &e.add(&p2, &p3));
        prop_assert!(e.contains(&lhs));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(e.add(&p1, &e.neg(&p1)), Point::Infinity);
        prop_assert_eq!(e.add(&p2, &Point::Infinity), p2.clone());
        prop_assert_eq!(e.add(&p1, &p2), e.add(&p2, &p1));
    }

    #[test]
    fn torsion_is_a_subgroup_of_allowed_order(e in curve()) {
        let t = torsion_points(&e);
        prop_assert!([1usize, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16].contains(&t.len()), "order {}", t.len());
        prop_assert!(t.contains(&Point::Infinity));
        for a in &t {
            prop_assert!(e.contains(a));
            for b in &t {
                prop_assert!(t.contains(&e.add(a, b)));
            }
        }
    }
}

#[test]
fn known_torsion_orders() {
    let cases: [([i64; 5], usize); 4] = [
        ([0, 1, 1, 2, 4], 5),
        ([0, 0, 1, -1, 0], 1),
        ([1, 0, 0, -45, 81], 10),
        ([0, 0, 0, -1, 0], 4),
    ];
    for (a, n) in cases {
        let e = EllCurve::from_ints(a).unwrap();
        assert_eq!(torsion_points(&e).len(), n, "{e}");
    }
    let e = EllCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
    assert_eq!(torsion_points(&e).len(), 6);
    assert!(e.j.is_zero());
}
