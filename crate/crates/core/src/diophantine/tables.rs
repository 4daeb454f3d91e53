use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Extended, RatFunc};
use crate::atlas::{fiber_plane_model, Atlas};
use crate::elliptic::is_cm;
use crate::error::Result;

use super::plane::{PlaneCurve, ProjPoint};

/// One rational place: a point, the j-invariant over it (infinity at a
/// cusp), and whether that j has CM.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceRow {
    pub point: ProjPoint,
    pub j: Extended,
    pub cm: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct PlaceTable {
    pub name: &'static str,
    pub left: &'static str,
    pub right: &'static str,
    pub rows: Vec<PlaceRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub point: String,
    pub problems: Vec<String>,
}

impl RowCheck {
    pub fn pass(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceTableReport {
    pub rows: Vec<RowCheck>,
}

impl PlaceTableReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(RowCheck::pass)
    }

    pub fn failures(&self) -> Vec<&RowCheck> {
        self.rows.iter().filter(|r| !r.pass()).collect()
    }
}

/// The x and y coordinates of a projective point as points of P^1, when
/// they are defined; `(0 : 1 : 0)` has no x-coordinate.
fn coordinates(p: &ProjPoint) -> (Option<Extended>, Option<Extended>) {
    let [x, y, _] = p.coords();
    if let Some((x, y)) = p.to_affine() {
        return (Some(Extended::Finite(x.clone())), Some(Extended::Finite(y.clone())));
    }
    if x.is_zero() {
        (None, Some(Extended::Infinity))
    } else if y.is_zero() {
        (Some(Extended::Infinity), None)
    } else {
        (Some(Extended::Infinity), Some(Extended::Infinity))
    }
}

/// Checks each row: the point lies on the model, both j-maps send it to
/// the claimed j, and the CM column agrees.
pub fn verify_place_table(curve: &PlaneCurve, rows: &[PlaceRow], j1: &RatFunc, j2: &RatFunc) -> PlaceTableReport {
    let rows = rows
        .iter()
        .map(|row| {
            let mut problems = Vec::new();
            if !curve.contains(&row.point) {
                problems.push("point is not on the model".to_string());
            }
            let (x, y) = coordinates(&row.point);
            for (name, t, map) in [("j1(x)", x, j1), ("j2(y)", y, j2)] {
                if let Some(t) = t {
                    let got = map.eval(&t);
                    if got != row.j {
                        problems.push(format!("{name} = {got}, table says {}", row.j));
                    }
                }
            }
            match (&row.j, row.cm) {
                (Extended::Finite(j), Some(cm)) if is_cm(j) != cm => {
                    problems.push(format!("CM flag {cm} but is_cm(j) = {}", !cm));
                }
                (Extended::Finite(_), None) => problems.push("finite j without a CM flag".into()),
                (Extended::Infinity, Some(_)) => problems.push("cusp with a CM flag".into()),
                _ => {}
            }
            RowCheck {
                point: row.point.to_string(),
                problems,
            }
        })
        .collect();
    PlaceTableReport { rows }
}

const INF: &str = "inf";

fn row(point: &str, j: &str, cm: Option<bool>) -> PlaceRow {
    let j = if j == INF {
        Extended::Infinity
    } else {
        Extended::Finite(parse_rational(j).expect("table j parses"))
    };
    PlaceRow {
        point: point.parse().expect("table point parses"),
        j,
        cm,
    }
}

const NO: Option<bool> = Some(false);
const YES: Option<bool> = Some(true);

/// The rational places tabulated for the five fiber products of genus at
/// least one whose points decide the exceptional j-invariants.
pub fn place_tables() -> Vec<PlaceTable> {
    vec![
        PlaceTable {
            name: "X_0(3) x X_S4(5)",
            left: "3.4.0.1",
            right: "5.5.0.1",
            rows: vec![
                row("(-81 : -13 : 1)", "-2^4*3^2*13^3", NO),
                row("(-27 : 0 : 1)", "0", YES),
                row("(-9 : 2 : 1)", "2^4*3^3", NO),
                row("(1 : 0 : 0)", INF, None),
                row("(0 : 1 : 0)", INF, None),
            ],
        },
        PlaceTable {
            name: "X_0(15)",
            left: "3.4.0.1",
            right: "5.6.0.1",
            rows: vec![
                row("(-729/2 : -40 : 1)", "-2^-3*5^2*241^3", NO),
                row("(-32 : -25/2 : 1)", "-2^-5*5*29^3", NO),
                row("(-729/32 : -25/8 : 1)", "2^-15*5*211^3", NO),
                row("(-2 : -10 : 1)", "-2^-1*5^2", NO),
                row("(1 : 0 : 0)", INF, None),
                row("(1 : 0 : 0)", INF, None),
                row("(0 : 1 : 0)", INF, None),
                row("(0 : 0 : 1)", INF, None),
            ],
        },
        PlaceTable {
            name: "X_0(3) x X_ns+(5)",
            left: "3.4.0.1",
            right: "5.10.0.1",
            rows: vec![
                row("(-243 : 2 : 1)", "-2^15*3*5^3", YES),
                row("(-27 : -1 : 1)", "0", YES),
                row("(-27 : 0 : 1)", "0", YES),
                row("(-3 : -1 : 1)", "0", YES),
                row("(27 : 3 : 1)", "2^4*3^3*5^3", YES),
            ],
        },
        PlaceTable {
            name: "X_ns+(4) x X_sp+(5)",
            left: "4.4.0.1",
            right: "5.15.0.1",
            rows: vec![
                row("(-561/8 : -5/4 : 1)", "-2^-10*3^3*5^4*11^3*17^3", NO),
                row("(-8 : -3 : 1)", "-2^15", YES),
                row("(1 : 0 : 0)", INF, None),
                row("(6 : -2 : 1)", "2^6*3^3", YES),
                row("(8 : -5 : 1)", "0", YES),
                row("(24 : -1 : 1)", "-2^15*3^3", YES),
            ],
        },
        PlaceTable {
            name: "X_ns+(4) x X_0(5)",
            left: "4.4.0.1",
            right: "5.6.0.1",
            rows: vec![
                row("(1 : 0 : 0)", INF, None),
                row("(1 : 0 : 0)", INF, None),
                row("(59/8 : -25/4 : 1)", "2^-10*5*59^3", NO),
                row("(41/2 : -20 : 1)", "-2^-2*5^2*41^3", NO),
            ],
        },
    ]
}

impl PlaceTable {
    /// Builds the model from the atlas j-maps and checks every row.
    pub fn verify(&self, atlas: &Atlas) -> Result<PlaceTableReport> {
        let (r1, r2) = (atlas.record(self.left)?, atlas.record(self.right)?);
        let curve = PlaneCurve::new(&fiber_plane_model(r1, r2)?)?;
        Ok(verify_place_table(&curve, &self.rows, &r1.jmap, &r2.jmap))
    }

    /// j-invariants of the non-cuspidal rows.
    pub fn finite_js(&self) -> Vec<BigRational> {
        self.rows.iter().filter_map(|r| r.j.finite().cloned()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_verify() {
        let atlas = Atlas::embedded();
        for t in place_tables() {
            let r = t.verify(atlas).unwrap();
            assert!(r.ok(), "{}: {:?}", t.name, r.failures());
        }
    }

    #[test]
    fn wrong_claims_are_itemized() {
        let atlas = Atlas::embedded();
        let mut t = place_tables().remove(0);
        t.rows[0].cm = YES;
        t.rows[2].point = "(-9 : 3 : 1)".parse().unwrap();
        let r = t.verify(atlas).unwrap();
        let bad: Vec<&str> = r.failures().iter().map(|c| c.point.as_str()).collect();
        assert_eq!(bad, vec!["(-81 : -13 : 1)", "(-9 : 3 : 1)"]);
    }
}
