//! Recomputes level, index, genus, determinant, -I and maximality for every
//! record. Point GALOIS_ATLAS_PATH at an edited copy of the data to see
//! failures itemized.

use galois_atlas::atlas::{validate_atlas, Atlas};

fn main() -> galois_atlas::Result<()> {
    let atlas = Atlas::load_unvalidated()?;
    let report = validate_atlas(&atlas);
    for r in &report.records {
        let bad: Vec<_> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        if bad.is_empty() {
            println!("ok    {}", r.label);
        } else {
            println!("FAIL  {}: {}", r.label, bad.join(", "));
        }
    }
    std::process::exit(if report.ok() { 0 } else { 1 });
}
