//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use galois_atlas::atlas::Atlas;
use galois_atlas::suite::{run_check, SuiteOptions, EXAMPLE_MODEL};

const BIN: &str = env!("CARGO_BIN_EXE_galois-atlas");

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn analyze_50a1_cli() -> Outcome {
    let (code, out) = cli(&["analyze", "--curve", "1,0,1,-126,-552"])?;
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let v: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let j = v["j"].as_str().unwrap_or_default();
    let smallest = v["smallest_surjective_prime"].as_u64();
    let nonsurj: Vec<u64> = v["verdicts"]
        .as_array()
        .map(|a| {
            a.iter()
                .filter(|x| x["nonsurjective"].as_bool() == Some(true))
                .filter_map(|x| x["ell"].as_u64())
                .collect()
        })
        .unwrap_or_default();
    // -2^-3 * 5^2 * 241^3
    if j != "-349938025/8" || nonsurj != [2, 3, 5] || smallest != Some(7) {
        return Err(format!("cli: j = {j}, nonsurjective {nonsurj:?}, smallest {smallest:?}"));
    }
    Ok(format!("cli: j = {j}, nonsurjective {{2, 3, 5}}, smallest 7"))
}

fn model_cli() -> Outcome {
    let (code, out) = cli(&["model", "3.4.0.1", "5.5.0.1"])?;
    if code != 0 || out.trim() != EXAMPLE_MODEL {
        return Err(format!("cli exit {code}: {}", out.trim()));
    }
    Ok("cli output identical".into())
}

fn main() -> ExitCode {
    let atlas = match Atlas::load() {
        Ok(a) => a,
        Err(e) => {
            println!("FAIL atlas did not load: {e}");
            return ExitCode::FAILURE;
        }
    };
    let opts = SuiteOptions::default();

    let criteria: [(u32, &str, f64); 9] = [
        (1, "six-j", 30.0),
        (2, "curve-50a1", 5.0),
        (3, "fiber-model", 1.0),
        (4, "place-tables", 10.0),
        (5, "point-search", 60.0),
        (6, "local-solvability", 5.0),
        (7, "genus-suite", 60.0),
        (8, "atlas", 60.0),
        (9, "properties", 120.0),
    ];

    let mut failed = 0;
    for (n, name, budget) in criteria {
        let start = Instant::now();
        let mut outcome = run_check(name, &atlas, &opts);
        if outcome.is_ok() {
            let extra = match n {
                2 => Some(analyze_50a1_cli()),
                3 => Some(model_cli()),
                _ => None,
            };
            if let Some(extra) = extra {
                outcome = match (outcome, extra) {
                    (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
                    (_, Err(b)) => Err(b),
                    (Err(a), _) => Err(a),
                };
            }
        }
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(d) if secs > budget => Err(format!("{d} but took {secs:.2}s")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS criterion {n} {name} ({secs:.2}s, budget {budget}s): {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {n} {name} ({secs:.2}s, budget {budget}s): {d}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all 9 criteria pass");
        ExitCode::SUCCESS
    }
}
