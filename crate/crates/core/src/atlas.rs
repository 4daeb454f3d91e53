//! The embedded table of genus-0 modular curves, the exceptional and CM
//! j-invariants, and plane models of fiber products.

use std::sync::OnceLock;

use num::BigRational;
use serde::Serialize;

use crate::algebra::{bipoly_from_jmap_difference, parse_rational, BiPoly, RatFunc};
use crate::error::{Error, Result};
use crate::gl2::{
    borel, fiber_product, nonsplit_cartan, nonsplit_cartan_normalizer, split_cartan_normalizer, Gl2Subgroup,
};

pub const ATLAS_TEXT: &str = include_str!("../data/atlas.txt");
pub const ATLAS_PATH_VAR: &str = "GALOIS_ATLAS_PATH";

#[derive(Clone, Debug)]
pub struct ModularCurveRecord {
    pub label: String,
    pub name: Option<String>,
    pub ell: u32,
    pub level: u32,
    pub index: u64,
    pub genus: u32,
    pub jmap: RatFunc,
    pub generators: String,
    pub group: Gl2Subgroup,
    /// Outside the maximal table; kept for fiber products only.
    pub auxiliary: bool,
}

impl ModularCurveRecord {
    pub fn display_name(&self) -> &str {
        self.name.as_deref().unwrap_or(&self.label)
    }

    /// One line of the data file.
    pub fn to_line(&self) -> String {
        format!(
            "{} | {} | {} | {} | {} | {} | {} | {}",
            self.label,
            self.name.as_deref().unwrap_or("-"),
            self.ell,
            self.level,
            self.index,
            self.genus,
            self.jmap,
            self.generators
        )
    }
}

#[derive(Clone, Debug)]
pub struct Atlas {
    pub records: Vec<ModularCurveRecord>,
    pub exceptional_j: Vec<BigRational>,
    pub cm_j: Vec<BigRational>,
}

fn build_group(spec: &str) -> Result<Gl2Subgroup> {
    let spec = spec.trim();
    let arg = |prefix: &str| -> Option<Result<u32>> {
        spec.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')).map(|n| {
            n.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(1, format!("bad modulus in {spec}")))
        })
    };
    if let Some(n) = arg("borel(") {
        return Ok(borel(n?));
    }
    if let Some(n) = arg("ns+(") {
        return Ok(nonsplit_cartan_normalizer(n?));
    }
    if let Some(n) = arg("ns(") {
        return Ok(nonsplit_cartan(n?));
    }
    if let Some(n) = arg("sp+(") {
        return Ok(split_cartan_normalizer(n?));
    }
    spec.parse()
}

#[derive(PartialEq)]
enum Section {
    None,
    Table,
    Auxiliary,
    Exceptional,
    Cm,
}

impl Atlas {
    /// Parses atlas text without validating it.
    pub fn parse(text: &str) -> Result<Atlas> {
        let mut atlas = Atlas {
            records: Vec::new(),
            exceptional_j: Vec::new(),
            cm_j: Vec::new(),
        };
        let mut section = Section::None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            section = match line {
                "[table]" => Section::Table,
                "[auxiliary]" => Section::Auxiliary,
                "[exceptional_j]" => Section::Exceptional,
                "[cm_j]" => Section::Cm,
                _ => {
                    match section {
                        Section::None => {
                            return Err(Error::parse(1, "data before the first section").at_line(line_no))
                        }
                        Section::Table | Section::Auxiliary => {
                            let rec = parse_record(line, section == Section::Auxiliary)
                                .map_err(|e| e.at_line(line_no))?;
                            atlas.records.push(rec);
                        }
                        Section::Exceptional => {
                            atlas.exceptional_j.push(parse_rational(line).map_err(|e| e.at_line(line_no))?)
                        }
                        Section::Cm => atlas.cm_j.push(parse_rational(line).map_err(|e| e.at_line(line_no))?),
                    }
                    continue;
                }
            };
        }
        Ok(atlas)
    }

    /// Parses and validates; the first failing check becomes the error.
    pub fn from_text(text: &str) -> Result<Atlas> {
        let atlas = Atlas::parse(text)?;
        let report = validate_atlas(&atlas);
        if let Some((label, field)) = report.first_failure() {
            return Err(Error::Atlas { label, field });
        }
        Ok(atlas)
    }

    /// Loads from `GALOIS_ATLAS_PATH` when set, else the embedded copy.
    pub fn load() -> Result<Atlas> {
        match std::env::var_os(ATLAS_PATH_VAR) {
            Some(path) => Atlas::from_text(&std::fs::read_to_string(path)?),
            None => Ok(Atlas::embedded().clone()),
        }
    }

    /// Like [`Atlas::load`] but skips validation, so a damaged override can
    /// still be inspected.
    pub fn load_unvalidated() -> Result<Atlas> {
        match std::env::var_os(ATLAS_PATH_VAR) {
            Some(path) => Atlas::parse(&std::fs::read_to_string(path)?),
            None => Ok(Atlas::embedded().clone()),
        }
    }

    /// The embedded atlas, validated once per process.
    pub fn embedded() -> &'static Atlas {
        static CELL: OnceLock<Atlas> = OnceLock::new();
        CELL.get_or_init(|| Atlas::from_text(ATLAS_TEXT).expect("embedded atlas is valid"))
    }

    pub fn labels(&self) -> Vec<String> {
        self.records.iter().map(|r| r.label.clone()).collect()
    }

    /// Lookup by label or common name.
    pub fn record(&self, key: &str) -> Result<&ModularCurveRecord> {
        let key = key.trim();
        self.records
            .iter()
            .find(|r| r.label == key || r.name.as_deref() == Some(key))
            .ok_or_else(|| Error::UnknownLabel {
                label: key.to_string(),
                valid: self.labels(),
            })
    }

    /// Maximal-table records attached to `ell`.
    pub fn records_for(&self, ell: u32) -> impl Iterator<Item = &ModularCurveRecord> {
        self.records.iter().filter(move |r| r.ell == ell && !r.auxiliary)
    }

    pub fn is_cm(&self, j: &BigRational) -> bool {
        self.cm_j.contains(j)
    }

    pub fn is_exceptional(&self, j: &BigRational) -> bool {
        self.exceptional_j.contains(j)
    }

    /// Group of the fiber product named by labels joined with `x`, e.g.
    /// `3.4.0.1x5.6.0.1`.
    pub fn product_group(&self, spec: &str) -> Result<Gl2Subgroup> {
        let mut parts = spec.split('x').map(str::trim).filter(|s| !s.is_empty());
        let first = parts
            .next()
            .ok_or_else(|| Error::InvalidArgument("empty group specification".into()))?;
        let mut g = self.record(first)?.group.clone();
        for p in parts {
            g = fiber_product(&g, &self.record(p)?.group)?;
        }
        Ok(g)
    }
}

fn parse_record(line: &str, auxiliary: bool) -> Result<ModularCurveRecord> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    if fields.len() != 8 {
        return Err(Error::parse(1, format!("expected 8 fields, found {}", fields.len())));
    }
    let int = |i: usize, what: &str| -> Result<u64> {
        fields[i]
            .parse()
            .map_err(|_| Error::parse(1, format!("{what} is not an integer: {:?}", fields[i])))
    };
    Ok(ModularCurveRecord {
        label: fields[0].to_string(),
        name: (fields[1] != "-").then(|| fields[1].to_string()),
        ell: int(2, "ell")? as u32,
        level: int(3, "level")? as u32,
        index: int(4, "index")?,
        genus: int(5, "genus")? as u32,
        jmap: fields[6].parse()?,
        generators: fields[7].to_string(),
        group: build_group(fields[7])?,
        auxiliary,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub label: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub records: Vec<RecordReport>,
    pub global: Vec<Check>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<(String, String)> {
        for r in &self.records {
            if let Some(c) = r.checks.iter().find(|c| !c.pass) {
                return Some((r.label.clone(), format!("{}: expected {}, found {}", c.name, c.expected, c.actual)));
            }
        }
        self.global
            .iter()
            .find(|c| !c.pass)
            .map(|c| ("atlas".into(), format!("{}: expected {}, found {}", c.name, c.expected, c.actual)))
    }

    pub fn failures(&self) -> Vec<(String, &Check)> {
        let mut out = Vec::new();
        for r in &self.records {
            out.extend(r.checks.iter().filter(|c| !c.pass).map(|c| (r.label.clone(), c)));
        }
        out.extend(self.global.iter().filter(|c| !c.pass).map(|c| ("atlas".to_string(), c)));
        out
    }
}

/// Labels of the form `N.i.g.n` must agree with the level, index and genus fields.
fn label_fields(label: &str) -> Option<(u32, u64, u32)> {
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 4 {
        return None;
    }
    Some((parts[0].parse().ok()?, parts[1].parse().ok()?, parts[2].parse().ok()?))
}

pub fn validate_record(r: &ModularCurveRecord) -> RecordReport {
    let g = &r.group;
    let mut checks = Vec::new();
    if let Some((n, i, gen)) = label_fields(&r.label) {
        checks.push(Check::new("label", format!("{n}.{i}.{gen}"), format!("{}.{}.{}", r.level, r.index, r.genus)));
    }
    checks.push(Check::new("index", r.index, g.index()));
    checks.push(Check::new("level", r.level, g.level()));
    let genus = match g.genus() {
        Ok(d) => d.genus.to_string(),
        Err(e) => e.to_string(),
    };
    checks.push(Check::new("genus", r.genus, genus));
    checks.push(Check::new("det_surjective", true, g.det_surjective()));
    checks.push(Check::new("contains_minus_i", true, g.contains_minus_i()));
    if let Ok(d) = g.with_minus_i().genus() {
        if r.genus == 0 {
            checks.push(Check::new("jmap_degree", d.index_psl2, r.jmap.map_degree()));
        }
    }
    let prime_power = crate::gl2::prime_divisors(r.level) == vec![r.ell];
    checks.push(Check::new("level_is_power_of_ell", true, prime_power));
    if !r.auxiliary {
        checks.push(Check::new("maximal", true, g.is_maximal_in_ambient()));
    }
    let round = r.jmap.to_string().parse::<RatFunc>().ok();
    checks.push(Check::new("jmap_round_trip", true, round.as_ref() == Some(&r.jmap)));
    RecordReport {
        label: r.label.clone(),
        checks,
    }
}

pub fn validate_atlas(a: &Atlas) -> ValidationReport {
    use rayon::prelude::*;
    let records: Vec<RecordReport> = a.records.par_iter().map(validate_record).collect();
    let mut global = vec![
        Check::new("table_records", 12, a.records.iter().filter(|r| !r.auxiliary).count()),
        Check::new("exceptional_count", 6, a.exceptional_j.len()),
        Check::new("cm_count", 13, a.cm_j.len()),
        Check::new(
            "cm_contains_0_and_1728",
            true,
            a.cm_j.contains(&BigRational::from_integer(0.into()))
                && a.cm_j.contains(&BigRational::from_integer(1728.into())),
        ),
        Check::new(
            "exceptional_non_cm",
            true,
            a.exceptional_j.iter().all(|j| !a.cm_j.contains(j)),
        ),
    ];
    let mut labels = a.labels();
    labels.sort();
    labels.dedup();
    global.push(Check::new("unique_labels", a.records.len(), labels.len()));
    ValidationReport { records, global }
}

/// Affine plane model of the fiber product of two curves at different primes.
pub fn fiber_plane_model(r1: &ModularCurveRecord, r2: &ModularCurveRecord) -> Result<BiPoly> {
    if r1.ell == r2.ell {
        return Err(Error::SamePrime(r1.ell));
    }
    Ok(bipoly_from_jmap_difference(&r1.jmap, &r2.jmap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn embedded_atlas_loads() {
        let a = Atlas::embedded();
        assert_eq!(a.records.len(), 13);
        let r = a.record("4.4.0.1").unwrap();
        assert_eq!(r.jmap.to_string(), "-4t^4 + 32t^3");
        assert_eq!(r.name.as_deref(), Some("X_ns+(4)"));
        assert!(a.exceptional_j.contains(&crate::algebra::frac(-25, 2)));
        assert!(a.cm_j.contains(&int(54000)));
        assert!(a.record("X_0(2)").is_ok());
        assert!(matches!(a.record("7.8.0.1"), Err(Error::UnknownLabel { .. })));
    }

    #[test]
    fn altered_genus_is_reported() {
        let text = ATLAS_TEXT.replace("2.3.0.1  | X_0(2)   | 2 | 2 | 3  | 0", "2.3.0.1  | X_0(2)   | 2 | 2 | 3  | 1");
        let a = Atlas::parse(&text).unwrap();
        let report = validate_atlas(&a);
        let fails = report.failures();
        assert!(fails.iter().all(|(l, _)| l == "2.3.0.1"));
        assert!(fails.iter().any(|(_, c)| c.name == "genus"));
        assert!(matches!(Atlas::from_text(&text), Err(Error::Atlas { .. })));
    }

    #[test]
    fn auxiliary_record() {
        let r = Atlas::embedded().record("X_sp+(5)").unwrap();
        assert_eq!(r.group.index(), 15);
        assert_eq!(r.group.genus().unwrap().genus, 0);
    }

    #[test]
    fn plane_models() {
        let a = Atlas::embedded();
        let m = |x: &str, y: &str| fiber_plane_model(a.record(x).unwrap(), a.record(y).unwrap());
        assert_eq!(
            m("3.4.0.1", "5.5.0.1").unwrap().to_string(),
            "x^4 + 36x^3 + 270x^2 - xy^5 - 5xy^4 - 40xy^3 + 756x + 729"
        );
        assert_eq!(m("2.2.0.1", "3.3.0.1").unwrap().to_string(), "x^2 - y^3 + 1728");
        assert_eq!(
            m("3.4.0.1", "5.6.0.1").unwrap().to_string(),
            "x^4y + 36x^3y + 270x^2y - xy^6 - 30xy^5 - 315xy^4 - 1300xy^3 - 1575xy^2 + 6xy - 125x + 729y"
        );
        assert!(matches!(m("3.4.0.1", "9.27.0.1"), Err(Error::SamePrime(3))));
    }
}
