//! Replays the checkable computations behind the bound of 7 on the
//! smallest surjective prime.

use std::collections::BTreeSet;
use std::time::Instant;

use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Extended};
use crate::atlas::{fiber_plane_model, validate_atlas, Atlas};
use crate::batch::{parse_batch, run_batch};
use crate::diophantine::{
    local_solvable_hyperelliptic, place_tables, search_points, verify_certificate, HyperellipticModel, LocalResult,
    PlaneCurve, ProjPoint,
};
use crate::elliptic::{kronecker_odd, torsion_points, CurveInput, EllCurve, Point};
use crate::error::{Error, Result};
use crate::galois::{analyze, mod2_surjective_exact, nonsurjective_ell_adic};

pub const CHECK_NAMES: [&str; 9] = [
    "six-j",
    "curve-50a1",
    "fiber-model",
    "place-tables",
    "point-search",
    "local-solvability",
    "genus-suite",
    "atlas",
    "properties",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperSuiteResult {
    pub checks: Vec<SuiteCheck>,
    pub overall: bool,
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub p_bound: u64,
    pub search_bound: u64,
    pub depth: u32,
    pub only: Option<Vec<String>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            p_bound: crate::galois::DEFAULT_P_BOUND,
            search_bound: 1024,
            depth: crate::diophantine::DEFAULT_MAX_DEPTH,
            only: None,
        }
    }
}

/// Outcome of one check: `Ok(details)` on success, `Err(details)` on failure.
type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> BigRational {
    parse_rational(s).expect("literal parses")
}

pub fn run_suite(atlas: &Atlas, opts: &SuiteOptions) -> Result<PaperSuiteResult> {
    let selected: Vec<&str> = match &opts.only {
        None => CHECK_NAMES.to_vec(),
        Some(names) => {
            for n in names {
                if !CHECK_NAMES.contains(&n.as_str()) {
                    return Err(Error::InvalidArgument(format!(
                        "unknown check {n:?}; valid checks: {}",
                        CHECK_NAMES.join(", ")
                    )));
                }
            }
            CHECK_NAMES.iter().copied().filter(|c| names.iter().any(|n| n == c)).collect()
        }
    };
    let checks: Vec<SuiteCheck> = selected
        .into_iter()
        .map(|name| {
            let start = Instant::now();
            let outcome = run_check(name, atlas, opts);
            let seconds = start.elapsed().as_secs_f64();
            let (pass, details) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteCheck {
                name: name.to_string(),
                pass,
                details,
                seconds,
            }
        })
        .collect();
    let overall = checks.iter().all(|c| c.pass);
    Ok(PaperSuiteResult { checks, overall })
}

pub fn run_check(name: &str, atlas: &Atlas, opts: &SuiteOptions) -> Outcome {
    match name {
        "six-j" => six_j(atlas, opts.p_bound),
        "curve-50a1" => curve_50a1(atlas, opts.p_bound),
        "fiber-model" => fiber_model(atlas),
        "place-tables" => tables(atlas),
        "point-search" => point_search(atlas, opts.search_bound),
        "local-solvability" => local_solvability(opts.depth),
        "genus-suite" => genus_suite(atlas),
        "atlas" => atlas_check(atlas),
        "properties" => properties(atlas),
        other => Err(format!("no check named {other}")),
    }
}

fn six_j(atlas: &Atlas, p_bound: u64) -> Outcome {
    ensure(atlas.exceptional_j.len() == 6, || format!("{} exceptional j", atlas.exceptional_j.len()))?;
    for j in &atlas.exceptional_j {
        let r = analyze(&CurveInput::J(j.clone()), atlas, p_bound).map_err(|e| format!("j = {j}: {e}"))?;
        ensure(r.nonsurjective_primes() == [2, 3, 5], || format!("j = {j}: nonsurjective at {:?}", r.nonsurjective_primes()))?;
        for v in &r.verdicts {
            for w in &v.witnesses {
                let map = &atlas.record(&w.label).map_err(|e| e.to_string())?.jmap;
                ensure(map.eval(&w.t) == Extended::Finite(j.clone()), || format!("witness {} at {} fails", w.label, w.t))?;
            }
        }
        ensure(r.mod7.is_certified(), || format!("j = {j}: mod 7 {}", r.mod7.label()))?;
        ensure(r.smallest_surjective_prime == 7, || format!("j = {j}: smallest {}", r.smallest_surjective_prime))?;
    }
    Ok("all six: nonsurjective at 2, 3, 5; mod 7 certified; smallest prime 7".into())
}

fn curve_50a1(atlas: &Atlas, p_bound: u64) -> Outcome {
    let e = EllCurve::from_ints([1, 0, 1, -126, -552]).map_err(|e| e.to_string())?;
    let r = analyze(&CurveInput::Curve(e), atlas, p_bound).map_err(|e| e.to_string())?;
    ensure(r.j == q("-2^-3*5^2*241^3"), || format!("j = {}", r.j))?;
    ensure(r.nonsurjective_primes() == [2, 3, 5], || format!("{:?}", r.nonsurjective_primes()))?;
    ensure(r.smallest_surjective_prime == 7, || format!("smallest {}", r.smallest_surjective_prime))?;
    Ok(format!("j = {}, smallest surjective prime 7", r.j))
}

pub const EXAMPLE_MODEL: &str = "x^4 + 36x^3 + 270x^2 - xy^5 - 5xy^4 - 40xy^3 + 756x + 729";

fn fiber_model(atlas: &Atlas) -> Outcome {
    let r1 = atlas.record("3.4.0.1").map_err(|e| e.to_string())?;
    let r2 = atlas.record("5.5.0.1").map_err(|e| e.to_string())?;
    let m = fiber_plane_model(r1, r2).map_err(|e| e.to_string())?.to_string();
    ensure(m == EXAMPLE_MODEL, || format!("got {m}"))?;
    Ok(m)
}

fn tables(atlas: &Atlas) -> Outcome {
    let mut rows = 0;
    for t in place_tables() {
        let r = t.verify(atlas).map_err(|e| format!("{}: {e}", t.name))?;
        if let Some(bad) = r.failures().first() {
            return Err(format!("{} row {}: {}", t.name, bad.point, bad.problems.join("; ")));
        }
        rows += r.rows.len();
    }
    Ok(format!("{rows} rows in 5 tables"))
}

fn model(atlas: &Atlas, a: &str, b: &str) -> std::result::Result<PlaneCurve, String> {
    let (r1, r2) = (atlas.record(a).map_err(|e| e.to_string())?, atlas.record(b).map_err(|e| e.to_string())?);
    PlaneCurve::new(&fiber_plane_model(r1, r2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn point_search(atlas: &Atlas, bound: u64) -> Outcome {
    let tabs = place_tables();
    let x015 = &tabs[1];
    let c = model(atlas, x015.left, x015.right)?;
    let found = search_points(&c, bound).map_err(|e| e.to_string())?;
    let j1 = &atlas.record(x015.left).map_err(|e| e.to_string())?.jmap;
    let listed: BTreeSet<&ProjPoint> = x015.rows.iter().filter(|r| !r.j.is_infinite()).map(|r| &r.point).collect();
    for p in &listed {
        ensure(found.points.contains(p), || format!("X_0(15): {p} not found"))?;
    }
    for p in found.affine_points() {
        let j = j1.eval_at(&p.coords()[0]);
        ensure(j.is_infinite() || listed.contains(p), || format!("X_0(15): unlisted point {p}"))?;
    }

    let c2 = model(atlas, "3.4.0.1", "5.5.0.1")?;
    let found2 = search_points(&c2, bound).map_err(|e| e.to_string())?;
    let want: BTreeSet<ProjPoint> = ["(-81:-13:1)", "(-27:0:1)", "(-9:2:1)", "(-3:0:1)", "(1:0:0)", "(0:1:0)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let got: BTreeSet<ProjPoint> = found2.points.iter().cloned().collect();
    ensure(got == want, || format!("X_0(3) x X_S4(5): found {got:?}"))?;
    Ok(format!("bound {bound}: {} points on X_0(15), 6 on X_0(3) x X_S4(5)", found.points.len()))
}

pub const EMPTY_SEXTIC: [i64; 7] = [6, -9, -18, 33, 9, -36, -12];

fn local_solvability(depth: u32) -> Outcome {
    let h = HyperellipticModel::from_ints(&EMPTY_SEXTIC).map_err(|e| e.to_string())?;
    let c = local_solvable_hyperelliptic(&h, 3, depth).map_err(|e| e.to_string())?;
    ensure(c.result == LocalResult::Empty && c.depth <= depth, || format!("sextic: {:?} at depth {}", c.result, c.depth))?;
    ensure(verify_certificate(&h, &c), || "sextic certificate does not re-verify".into())?;
    let g = HyperellipticModel::from_ints(&[1, 0, 0, 0, 0, 0, 1]).map_err(|e| e.to_string())?;
    let c2 = local_solvable_hyperelliptic(&g, 3, depth).map_err(|e| e.to_string())?;
    ensure(c2.result == LocalResult::Solvable && verify_certificate(&g, &c2), || format!("x^6 + 1: {c2:?}"))?;
    Ok(format!("sextic empty over Q_3 at depth {}; x^6 + 1 solvable", c.depth))
}

pub const FIBER_GENERA: [(&str, u32); 5] = [
    ("3.4.0.1x5.6.0.1", 1),
    ("3.4.0.1x5.5.0.1", 1),
    ("3.4.0.1x5.10.0.1", 2),
    ("9.27.0.1x2.3.0.1", 4),
    ("4.4.0.1x5.15.0.1", 3),
];

fn genus_suite(atlas: &Atlas) -> Outcome {
    for r in &atlas.records {
        let g = r.group.genus().map_err(|e| format!("{}: {e}", r.label))?.genus;
        ensure(g == 0, || format!("{} has genus {g}", r.label))?;
    }
    for (spec, want) in FIBER_GENERA {
        let g = atlas.product_group(spec).and_then(|h| h.genus()).map_err(|e| format!("{spec}: {e}"))?.genus;
        ensure(g == want, || format!("{spec}: genus {g}, expected {want}"))?;
    }
    Ok(format!("{} records of genus 0; 5 fiber products", atlas.records.len()))
}

fn atlas_check(atlas: &Atlas) -> Outcome {
    let report = validate_atlas(atlas);
    if let Some((label, check)) = report.failures().first() {
        return Err(format!("{label}: {} expected {} got {}", check.name, check.expected, check.actual));
    }
    let table = atlas.records.iter().filter(|r| !r.auxiliary).count();
    ensure(table == 12, || format!("{table} table records"))?;
    for j in &atlas.exceptional_j {
        ensure(!atlas.is_cm(j), || format!("exceptional j = {j} is CM"))?;
    }
    let e = EllCurve::from_ints([0, 1, 1, 2, 4]).map_err(|e| e.to_string())?;
    let t = torsion_points(&e);
    let mut want = vec![
        Point::Infinity,
        Point::from_ints(-1, -2),
        Point::from_ints(-1, 1),
        Point::from_ints(2, -5),
        Point::from_ints(2, 4),
    ];
    want.sort();
    ensure(t == want, || format!("torsion {t:?}"))?;
    Ok("12 table records valid; exceptional j non-CM; torsion of order 5".into())
}

fn random_curve(rng: &mut ChaCha8Rng, atlas: &Atlas) -> EllCurve {
    loop {
        let a: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-12..=12));
        if let Ok(e) = EllCurve::from_ints(a) {
            if !atlas.is_cm(&e.j) && !e.j.is_zero() {
                return e;
            }
        }
    }
}

const TWIST_DS: [i64; 12] = [-1, 2, -2, 3, -3, 5, -5, 6, -7, 10, -11, 13];

/// The seeded property checks: twist invariance, the twist law for `a_p`,
/// witness soundness and batch determinism.
fn properties(atlas: &Atlas) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7715);
    for _ in 0..50 {
        let e = random_curve(&mut rng, atlas);
        let d = BigInt::from(TWIST_DS[rng.gen_range(0..TWIST_DS.len())]);
        let et = e.quadratic_twist(&d).map_err(|e| e.to_string())?;
        ensure(et.j == e.j, || format!("twist of {e} by {d} changed j"))?;
        for ell in [2, 3, 5] {
            let a = nonsurjective_ell_adic(&e.j, ell, atlas).map_err(|x| x.to_string())?;
            let b = nonsurjective_ell_adic(&et.j, ell, atlas).map_err(|x| x.to_string())?;
            ensure(a == b, || format!("{e} twisted by {d}: verdicts differ at {ell}"))?;
        }
        ensure(mod2_surjective_exact(&e) == mod2_surjective_exact(&et), || format!("{e} by {d}: mod 2 differs"))?;
        for p in crate::arith::primes_up_to(100).into_iter().filter(|&p| p >= 3) {
            if let (Ok(x), Ok(y)) = (e.a_p(p), et.a_p(p)) {
                if (&d % BigInt::from(p)).is_zero() {
                    continue;
                }
                let chi = kronecker_odd(&d, p) as i64;
                ensure(y == chi * x, || format!("{e} by {d} at p = {p}: {y} vs {chi}*{x}"))?;
            }
        }
    }

    let mut witnesses = 0;
    for r in atlas.records.iter().filter(|r| !r.auxiliary) {
        let mut done = 0;
        while done < 20 {
            let t = BigRational::new(rng.gen_range(-60..=60).into(), rng.gen_range(1..=12).into());
            let Extended::Finite(j) = r.jmap.eval_at(&t) else { continue };
            if atlas.is_cm(&j) || j.is_zero() || j == BigRational::from_integer(1728.into()) {
                continue;
            }
            let v = nonsurjective_ell_adic(&j, r.ell, atlas).map_err(|e| e.to_string())?;
            ensure(v.nonsurjective, || format!("{} at t = {t}: surjective", r.label))?;
            for w in &v.witnesses {
                let map = &atlas.record(&w.label).map_err(|e| e.to_string())?.jmap;
                ensure(map.eval(&w.t) == Extended::Finite(j.clone()), || format!("bad witness {} {}", w.label, w.t))?;
            }
            witnesses += v.witnesses.len();
            done += 1;
        }
    }

    let mut csv = String::new();
    for j in &atlas.exceptional_j {
        csv.push_str(&format!("j={j}\n"));
    }
    csv.push_str("j=0\n1,0,1,-126,-552\n0,0,1,-1,0\nj=-25/2\n");
    let lines = parse_batch(&csv).map_err(|e| e.to_string())?;
    let one = run_batch(&lines, atlas, 2000, 1).map_err(|e| e.to_string())?;
    let four = run_batch(&lines, atlas, 2000, 4).map_err(|e| e.to_string())?;
    ensure(one == four, || "batch output depends on the number of jobs".into())?;
    Ok(format!("50 twists, {witnesses} witnesses re-evaluated, batch deterministic"))
}
