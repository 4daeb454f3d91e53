//! Level, index, genus and cusps of atlas groups and their fiber products.

use galois_atlas::atlas::Atlas;

fn main() -> galois_atlas::Result<()> {
    let atlas = Atlas::embedded();
    for r in &atlas.records {
        let inv = r.group.invariants()?;
        println!("{:<9} {:<9} level {:>2} index {:>2} genus {} cusps {}", r.label, r.display_name(), inv.level, inv.index, inv.genus, inv.cusp_count);
    }
    println!();
    for spec in ["3.4.0.1x5.6.0.1", "3.4.0.1x5.5.0.1", "3.4.0.1x5.10.0.1", "9.27.0.1x2.3.0.1", "4.4.0.1x5.15.0.1"] {
        let inv = atlas.product_group(spec)?.invariants()?;
        println!("{spec:<18} level {:>2} index {:>3} genus {}", inv.level, inv.index, inv.genus);
    }
    Ok(())
}
