//! Analysis of many curves from a CSV-like file.
//!
//! Each non-comment line is `a1,a2,a3,a4,a6` or `j=<rational>`. Lines that
//! fail to parse abort the job before any analysis; lines that parse but
//! cannot be analyzed (CM j, ...) are recorded in the summary.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atlas::Atlas;
use crate::elliptic::CurveInput;
use crate::error::{Error, Result};
use crate::galois::{analyze, GaloisReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchLine {
    pub line: usize,
    pub text: String,
    pub input: CurveInput,
}

pub fn parse_batch(text: &str) -> Result<Vec<BatchLine>> {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let t = raw.split('#').next().unwrap().trim();
        if t.is_empty() {
            continue;
        }
        match t.parse::<CurveInput>() {
            Ok(input) => lines.push(BatchLine {
                line: i + 1,
                text: t.to_string(),
                input,
            }),
            Err(e) => bad.push(format!("line {}: {}", i + 1, e.at_line(i + 1))),
        }
    }
    if !bad.is_empty() {
        return Err(Error::BatchInput(bad));
    }
    Ok(lines)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchFailure {
    pub line: usize,
    pub input: String,
    pub kind: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub curves: usize,
    pub analyzed: usize,
    pub histogram: BTreeMap<String, usize>,
    pub failures: Vec<BatchFailure>,
}

/// Rendered output: file names and contents, `summary.json` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchOutput {
    pub files: Vec<(String, String)>,
    pub summary: BatchSummary,
}

fn failure_kind(e: &Error) -> &'static str {
    match e {
        Error::CmInput(_) => "cm",
        Error::TheoremViolation(_) => "theorem-violation",
        _ => "error",
    }
}

pub fn report_file_name(line: usize) -> String {
    format!("line-{line:05}.json")
}

/// Analyzes every line on a pool of `jobs` threads. The output depends
/// only on the input, never on `jobs`.
pub fn run_batch(lines: &[BatchLine], atlas: &Atlas, p_bound: u64, jobs: usize) -> Result<BatchOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let results: Vec<Result<GaloisReport>> =
        pool.install(|| lines.par_iter().map(|l| analyze(&l.input, atlas, p_bound)).collect());

    let mut files = Vec::new();
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut failures = Vec::new();
    for (l, r) in lines.iter().zip(results) {
        match r {
            Ok(report) => {
                *histogram.entry(report.smallest_surjective_prime.to_string()).or_default() += 1;
                files.push((report_file_name(l.line), to_json(&report)?));
            }
            Err(e) => failures.push(BatchFailure {
                line: l.line,
                input: l.text.clone(),
                kind: failure_kind(&e).to_string(),
                error: e.to_string(),
            }),
        }
    }
    let summary = BatchSummary {
        curves: lines.len(),
        analyzed: lines.len() - failures.len(),
        histogram,
        failures,
    };
    files.push(("summary.json".to_string(), to_json(&summary)?));
    Ok(BatchOutput { files, summary })
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn write_batch(out: &BatchOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, content) in &out.files {
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}
