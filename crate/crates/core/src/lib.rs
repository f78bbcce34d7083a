//! Exact rotation sets `Λ_ρ` and `Λ′_ρ` of a parametric family of torus
//! diffeomorphisms.
//!
//! The parameter ρ is carried as an exact rational surrogate ([`RhoParam`])
//! whose integer-part predicates are certified on an index window. On top of
//! it the crate computes the index set `I = {m : α_m < ρ}` and its block
//! structure, the best diagonal point and its extremality, exact convex
//! hulls of the point family, roundness bounds, and a floating-point model
//! of the one-dimensional dynamics on a bouquet of four circles.

pub mod denjoy;
pub mod diagonal;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod index_sets;
pub mod rho;
pub mod roundness;
pub mod ser;
pub mod svg;

pub use error::{Error, Result};
pub use rho::{Regime, RhoParam};
