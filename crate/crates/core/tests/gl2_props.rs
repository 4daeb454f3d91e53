use proptest::prelude::*;

use galois_atlas::gl2::{closure, fiber_product, gl2_order, prime_divisors, units, Gl2Subgroup, MatZN};

fn invertible(n: u32, e: [i64; 4]) -> Option<MatZN> {
    let m = MatZN::new(n, e[0], e[1], e[2], e[3]);
    m.is_invertible().then_some(m)
}

/// Closure of the given matrices together with diag(1, u) for every unit
/// u, so the result is always det-surjective.
fn det_surjective_group(n: u32, raw: &[[i64; 4]]) -> Gl2Subgroup {
    let mut gens: Vec<MatZN> = raw.iter().filter_map(|e| invertible(n, *e)).collect();
    gens.extend(units(n).into_iter().map(|u| MatZN::new(n, 1, 0, 0, u as i64)));
    closure(n, &gens).unwrap()
}

fn entries() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(0i64..72)
}

/// Independent count: the product over p^k || N of p^(4k-3) (p^2 - 1)(p^2 - p).
fn closed_form(n: u32) -> u64 {
    let mut out = 1u64;
    for p in prime_divisors(n) {
        let mut k = 0;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        let p = p as u64;
        out *= p.pow(4 * k - 4) * (p * p - 1) * (p * p - p);
    }
    out
}

#[test]
fn gl2_orders_match_closed_form() {
    for n in 2..=9 {
        assert_eq!(gl2_order(n), closed_form(n), "n = {n}");
        let gens = [
            MatZN::new(n, 1, 1, 0, 1),
            MatZN::new(n, 1, 0, 1, 1),
        ]
        .into_iter()
        .chain(units(n).into_iter().map(|u| MatZN::new(n, 1, 0, 0, u as i64)))
        .collect::<Vec<_>>();
        assert_eq!(closure(n, &gens).unwrap().order(), closed_form(n), "closure mod {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fiber_product_index_multiplies(
        pair in prop::sample::select(vec![(2u32, 3u32), (3, 4), (2, 5), (4, 5), (3, 5), (5, 8)]),
        g1 in prop::collection::vec(entries(), 0..=2),
        g2 in prop::collection::vec(entries(), 0..=2),
    ) {
        let h1 = det_surjective_group(pair.0, &g1);
        let h2 = det_surjective_group(pair.1, &g2);
        let h = fiber_product(&h1, &h2).unwrap();
        prop_assert_eq!(h.index(), h1.index() * h2.index());
        prop_assert_eq!(h.order(), h1.order() * h2.order());
    }

    #[test]
    fn genus_is_nonnegative_and_conjugation_invariant(
        n in 2u32..=15,
        gs in prop::collection::vec(entries(), 0..=2),
        g in entries(),
    ) {
        let h = det_surjective_group(n, &gs);
        let data = h.genus().unwrap();
        prop_assert!(data.cusps >= 1);
        if let Some(g) = invertible(n, g) {
            prop_assert_eq!(h.conjugate(&g).genus().unwrap(), data);
        }
    }

    #[test]
    fn preimage_keeps_level(
        n in prop::sample::select(vec![2u32, 3, 4]),
        k in 2u32..=3,
        gs in prop::collection::vec(entries(), 0..=2),
    ) {
        let h = det_surjective_group(n, &gs);
        let m = n * k;
        let lifted = h.preimage(m);
        prop_assert_eq!(lifted.level(), h.level());
        prop_assert_eq!(lifted.index(), h.index());
    }
}

#[test]
fn closure_is_closed() {
    let n = 8;
    let h = det_surjective_group(n, &[[1, 2, 3, 5], [0, 1, 1, 0]]);
    for a in h.elements() {
        assert!(h.contains(&a.inverse()));
        for b in h.elements().iter().take(20) {
            assert!(h.contains(&a.mul(b)));
        }
    }
    assert_eq!(gl2_order(n) % h.order(), 0);
}
