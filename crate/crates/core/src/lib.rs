pub mod algebra;
pub mod arith;
pub mod atlas;
pub mod batch;
pub mod diophantine;
pub mod elliptic;
pub mod error;
pub mod galois;
pub mod gl2;
pub mod suite;

pub use error::{Error, Result};
