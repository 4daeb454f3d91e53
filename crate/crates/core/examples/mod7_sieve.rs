//! The mod-7 trace sieve on a generic curve, on a curve with a rational
//! 7-isogeny, and on the six exceptional j-invariants.

use galois_atlas::atlas::Atlas;
use galois_atlas::elliptic::EllCurve;
use galois_atlas::galois::{candidate_classes, mod7_sieve};

fn main() -> galois_atlas::Result<()> {
    for c in candidate_classes(7).iter().take(5) {
        println!("class {:<32} order {:>3} density {:.4}", c.name, c.order, c.density);
    }
    println!("... {} classes in all\n", candidate_classes(7).len());

    let cases = [("37a1", [0, 0, 1, -1, 0]), ("26b1, 7-isogeny", [1, -1, 1, -3, 3])];
    for (name, a) in cases {
        let s = mod7_sieve(&EllCurve::from_ints(a)?, 2000)?;
        println!("{name}: {}", serde_json::to_string(&s)?);
    }
    for j in &Atlas::embedded().exceptional_j {
        let s = mod7_sieve(&EllCurve::from_j(j)?, 10_000)?;
        println!("j = {j}: {}", serde_json::to_string(&s)?);
    }
    Ok(())
}
