//! Local solvability over Q_p.
//!
//! For y^2 = f(x) the residue-disc search is complete up to its depth, so
//! "empty" is a proof. For a general plane model only a Hensel-liftable
//! point can be reported; "none found" proves nothing.

use galois_atlas::atlas::{fiber_plane_model, Atlas};
use galois_atlas::diophantine::{
    local_points_plane, local_solvable_hyperelliptic, verify_certificate, HyperellipticModel, PlaneCurve,
};

fn main() -> galois_atlas::Result<()> {
    let sextic = HyperellipticModel::from_ints(&[6, -9, -18, 33, 9, -36, -12])?;
    for p in [3, 5, 7] {
        let c = local_solvable_hyperelliptic(&sextic, p, 12)?;
        println!("{sextic} over Q_{p}: {:?} at depth {} (re-verified: {})", c.result, c.depth, verify_certificate(&sextic, &c));
    }

    let atlas = Atlas::embedded();
    let raw = PlaneCurve::new(&fiber_plane_model(atlas.record("9.27.0.1")?, atlas.record("2.3.0.1")?)?)?;
    for k in 1..=2 {
        let r = local_points_plane(&raw, 3, k)?;
        println!("9.27.0.1 x X_0(2), raw model mod 3^{k}: {}", serde_json::to_string(&r)?);
    }
    Ok(())
}
