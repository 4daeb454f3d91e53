//! Exact polynomial algebra over Q.

mod bipoly;
pub(crate) mod expr;
pub mod rational;
mod ratfunc;
mod roots;
mod unipoly;

pub use bipoly::{bipoly_from_jmap_difference, BiPoly};
pub use ratfunc::RatFunc;
pub use rational::{format_factored, frac, int, parse_rational, Extended};
pub use roots::{has_rational_root, rational_roots};
pub use unipoly::UniPoly;
