//! Exact verdicts at 2, 3, 5 and the mod-7 sieve for one curve.
//!
//!     cargo run --example analyze_curve -- 1,0,1,-126,-552
//!     cargo run --example analyze_curve -- j=-25/2

use galois_atlas::atlas::Atlas;
use galois_atlas::elliptic::CurveInput;
use galois_atlas::galois::{analyze, DEFAULT_P_BOUND};

fn main() -> galois_atlas::Result<()> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1,0,1,-126,-552".into());
    let input: CurveInput = arg.parse()?;
    let report = analyze(&input, Atlas::embedded(), DEFAULT_P_BOUND)?;

    println!("j = {}", report.j);
    for v in &report.verdicts {
        if v.nonsurjective {
            for w in &v.witnesses {
                println!("  l = {}: image in {} (t = {})", v.ell, w.label, w.t);
            }
        } else {
            println!("  l = {}: surjective", v.ell);
        }
    }
    println!("  l = 7: {}", report.mod7.label());
    println!("smallest surjective prime: {}", report.smallest_surjective_prime);
    Ok(())
}
