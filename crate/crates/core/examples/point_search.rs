//! Rational points of bounded height on the X_0(15) model, with the
//! j-invariant each one maps to.

use galois_atlas::atlas::{fiber_plane_model, Atlas};
use galois_atlas::diophantine::{search_points, PlaneCurve};

fn main() -> galois_atlas::Result<()> {
    let bound = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let atlas = Atlas::embedded();
    let (r1, r2) = (atlas.record("3.4.0.1")?, atlas.record("5.6.0.1")?);
    let curve = PlaneCurve::new(&fiber_plane_model(r1, r2)?)?;
    println!("{curve}");

    let found = search_points(&curve, bound)?;
    for (p, singular) in found.points.iter().zip(&found.singular_flags) {
        let j = match p.to_affine() {
            Some((x, _)) => r1.jmap.eval_at(x).to_string(),
            None => "point at infinity".into(),
        };
        let flag = if *singular { " (singular)" } else { "" };
        println!("  {p}{flag}  j = {j}");
    }
    Ok(())
}
