//! Rational points on plane models and p-adic local solvability.

mod local;
mod plane;
mod tables;

pub use local::{
    local_points_plane, local_solvable_hyperelliptic, verify_certificate, Branch, HyperellipticModel,
    LocalPlaneResult, LocalResult, LocalSolvabilityCertificate, LocalWitness, DEFAULT_MAX_DEPTH,
};
pub use plane::{search_points, PlaneCurve, ProjPoint, SearchResult};
pub use tables::{place_tables, verify_place_table, PlaceRow, PlaceTable, PlaceTableReport, RowCheck};
