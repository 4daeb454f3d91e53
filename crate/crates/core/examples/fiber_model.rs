//! Plane models of fiber products, from the j-maps of two atlas curves.

use galois_atlas::atlas::{fiber_plane_model, Atlas};

fn main() -> galois_atlas::Result<()> {
    let atlas = Atlas::embedded();
    for (a, b) in [("3.4.0.1", "5.5.0.1"), ("3.4.0.1", "5.6.0.1"), ("4.4.0.1", "5.6.0.1")] {
        let (r1, r2) = (atlas.record(a)?, atlas.record(b)?);
        println!("{} x {}:", r1.display_name(), r2.display_name());
        println!("  j1(x) = {}", r1.jmap.fmt_with('x'));
        println!("  j2(y) = {}", r2.jmap.fmt_with('y'));
        println!("  0 = {}", fiber_plane_model(r1, r2)?);
    }
    Ok(())
}
