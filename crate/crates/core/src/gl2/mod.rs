//! Finite matrix groups over Z/NZ and the genus of the associated modular curves.

mod group;
mod mat;

pub use group::{
    borel, closure, closure_capped, fiber_product, nonsplit_cartan, nonsplit_cartan_normalizer, split_cartan,
    split_cartan_normalizer, GenusData, Gl2Subgroup, GroupInvariants,
};
pub use mat::{divisors, gl2_order, prime_divisors, units, MatZN};
