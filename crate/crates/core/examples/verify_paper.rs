//! Replays every check behind the bound of 7.
//!
//!     cargo run --release --example verify_paper

use galois_atlas::atlas::Atlas;
use galois_atlas::suite::{run_suite, SuiteOptions};

fn main() -> galois_atlas::Result<()> {
    let r = run_suite(Atlas::embedded(), &SuiteOptions::default())?;
    for c in &r.checks {
        println!("{} {:<18} {:>6.2}s  {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.seconds, c.details);
    }
    if !r.overall {
        std::process::exit(1);
    }
    Ok(())
}
