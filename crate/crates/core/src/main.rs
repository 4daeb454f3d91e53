use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use galois_atlas::atlas::{fiber_plane_model, validate_atlas, Atlas};
use galois_atlas::batch::{parse_batch, run_batch, write_batch};
use galois_atlas::diophantine::{
    local_points_plane, local_solvable_hyperelliptic, search_points, HyperellipticModel, PlaneCurve, DEFAULT_MAX_DEPTH,
};
use galois_atlas::elliptic::CurveInput;
use galois_atlas::galois::{analyze, GaloisReport, DEFAULT_P_BOUND};
use galois_atlas::suite::{run_suite, SuiteOptions};
use galois_atlas::Error;

#[derive(Parser)]
#[command(name = "galois-atlas", version, about = "l-adic images of elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact verdicts at 2, 3, 5, the mod-7 sieve and the smallest surjective prime.
    Analyze(AnalyzeArgs),
    /// Analyze every curve in a file, writing one report per curve.
    Batch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_jobs())]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_P_BOUND)]
        p_bound: u64,
    },
    /// Replay the computations behind the bound of 7.
    VerifyPaper {
        /// Comma-separated check names.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_P_BOUND)]
        p_bound: u64,
        #[arg(long, default_value_t = 1024)]
        search_bound: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        depth: u32,
        #[arg(long)]
        pretty: bool,
    },
    /// Plane model of the fiber product of two atlas curves.
    Model { left: String, right: String },
    /// Level, index, genus and cusps of an atlas group or a product like 3.4.0.1x5.6.0.1.
    Genus {
        spec: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Rational points of bounded height on a plane model.
    Search {
        /// Affine model f(x, y), e.g. "x^2 + y^2 - 1".
        #[arg(long, conflicts_with = "fiber", allow_hyphen_values = true)]
        model: Option<String>,
        /// Two atlas labels whose fiber product to search.
        #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"])]
        fiber: Option<Vec<String>>,
        #[arg(long, default_value_t = 256)]
        bound: u64,
    },
    /// Local solvability at an odd prime.
    Localsolve {
        /// Coefficients of f in y^2 = f(x), leading first.
        #[arg(long, conflicts_with = "plane", allow_hyphen_values = true)]
        hyperelliptic: Option<String>,
        /// Affine plane model, scanned for Hensel-liftable points.
        #[arg(long, allow_hyphen_values = true)]
        plane: Option<String>,
        #[arg(long)]
        p: u64,
        /// Disc depth for the hyperelliptic search.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        depth: u32,
        /// Precision p^k for the plane scan.
        #[arg(long, default_value_t = 2)]
        k: u32,
    },
    /// Inspect the atlas of maximal curves.
    #[command(subcommand)]
    Atlas(AtlasCmd),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// a1,a2,a3,a4,a6
    #[arg(long, conflicts_with = "j", required_unless_present = "j", allow_hyphen_values = true)]
    curve: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    j: Option<String>,
    #[arg(long, default_value_t = DEFAULT_P_BOUND)]
    p_bound: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    pretty: bool,
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Check every record; exits 1 on any failure.
    Validate,
    /// Print the records.
    List,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CmInput(_) => 2,
        Error::TheoremViolation(_) => 3,
        _ => 1,
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn pretty_report(r: &GaloisReport) -> String {
    let mut s = format!("j = {}\n", r.j);
    for v in &r.verdicts {
        let w: Vec<String> = v.witnesses.iter().map(|w| format!("{} at t = {}", w.label, w.t)).collect();
        let verdict = if v.nonsurjective { "nonsurjective" } else { "surjective" };
        s.push_str(&format!("  l = {}: {verdict} {}\n", v.ell, w.join(", ")));
    }
    s.push_str(&format!("  l = 7: {}\n", r.mod7.label()));
    s.push_str(&format!("smallest surjective prime: {}\n", r.smallest_surjective_prime));
    s
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Analyze(a) => {
            let atlas = Atlas::load()?;
            let input: CurveInput = match (&a.curve, &a.j) {
                (Some(c), _) => c.parse()?,
                (None, Some(j)) => format!("j={j}").parse().map_err(|e| match e {
                    Error::Parse { line, column, message } => Error::Parse {
                        line,
                        column: column.saturating_sub(2).max(1),
                        message,
                    },
                    other => other,
                })?,
                (None, None) => unreachable!("clap requires one of --curve and --j"),
            };
            let report = analyze(&input, &atlas, a.p_bound)?;
            let text = if a.pretty {
                pretty_report(&report)
            } else {
                serde_json::to_string_pretty(&report)? + "\n"
            };
            match a.out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Cmd::Batch {
            input,
            out,
            jobs,
            p_bound,
        } => {
            let atlas = Atlas::load()?;
            let lines = parse_batch(&std::fs::read_to_string(input)?)?;
            let result = run_batch(&lines, &atlas, p_bound, jobs)?;
            write_batch(&result, &out)?;
            print_json(&result.summary)?;
        }
        Cmd::VerifyPaper {
            only,
            p_bound,
            search_bound,
            depth,
            pretty,
        } => {
            let atlas = Atlas::load_unvalidated()?;
            let opts = SuiteOptions {
                p_bound,
                search_bound,
                depth,
                only,
            };
            let r = run_suite(&atlas, &opts)?;
            if pretty {
                for c in &r.checks {
                    let mark = if c.pass { "PASS" } else { "FAIL" };
                    println!("{mark} {:<18} {:>7.2}s  {}", c.name, c.seconds, c.details);
                }
            } else {
                print_json(&r)?;
            }
            if !r.overall {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Model { left, right } => {
            let atlas = Atlas::load()?;
            println!("{}", fiber_plane_model(atlas.record(&left)?, atlas.record(&right)?)?);
        }
        Cmd::Genus { spec, pretty } => {
            let atlas = Atlas::load()?;
            let inv = atlas.product_group(&spec)?.invariants()?;
            if pretty {
                println!(
                    "{spec}: genus {}, level {}, index {}, {} cusps",
                    inv.genus, inv.level, inv.index, inv.cusp_count
                );
            } else {
                print_json(&inv)?;
            }
        }
        Cmd::Search { model, fiber, bound } => {
            let curve = match (model, fiber) {
                (Some(m), _) => m.parse::<PlaneCurve>()?,
                (None, Some(f)) => {
                    let atlas = Atlas::load()?;
                    PlaneCurve::new(&fiber_plane_model(atlas.record(&f[0])?, atlas.record(&f[1])?)?)?
                }
                (None, None) => return Err(Error::InvalidArgument("give --model or --fiber".into())),
            };
            print_json(&search_points(&curve, bound)?)?;
        }
        Cmd::Localsolve {
            hyperelliptic,
            plane,
            p,
            depth,
            k,
        } => match (hyperelliptic, plane) {
            (Some(h), _) => {
                let h: HyperellipticModel = h.parse()?;
                print_json(&local_solvable_hyperelliptic(&h, p, depth)?)?;
            }
            (None, Some(c)) => {
                let c: PlaneCurve = c.parse()?;
                print_json(&local_points_plane(&c, p, k)?)?;
            }
            (None, None) => return Err(Error::InvalidArgument("give --hyperelliptic or --plane".into())),
        },
        Cmd::Atlas(AtlasCmd::Validate) => {
            let atlas = Atlas::load_unvalidated()?;
            let report = validate_atlas(&atlas);
            print_json(&report)?;
            if !report.ok() {
                return Ok(ExitCode::from(1));
            }
        }
        Cmd::Atlas(AtlasCmd::List) => {
            for r in &Atlas::load()?.records {
                println!("{}", r.to_line());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
