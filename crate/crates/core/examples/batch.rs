//! Analyze a small file of curves with a worker pool and write one JSON
//! report per line plus a summary.

use galois_atlas::atlas::Atlas;
use galois_atlas::batch::{parse_batch, run_batch, write_batch};

const INPUT: &str = "\
# a1,a2,a3,a4,a6 or j=<rational>
1,0,1,-126,-552
0,0,1,-1,0
j=0
j=-2^-1*5^2
0,1,1,2,4
";

fn main() -> galois_atlas::Result<()> {
    let lines = parse_batch(INPUT)?;
    let out = run_batch(&lines, Atlas::embedded(), 2000, 4)?;
    let dir = std::env::temp_dir().join("galois-atlas-batch-example");
    write_batch(&out, &dir)?;
    println!("wrote {} files to {}", out.files.len(), dir.display());
    println!("{}", serde_json::to_string_pretty(&out.summary)?);
    Ok(())
}
