//! Exact construction and verification of generalized associahedra for
//! finite irreducible crystallographic root systems.
//!
//! The pieces, bottom up: [`cartan`] builds the root catalog, [`tau`] the
//! piecewise-linear involutions, [`compat`] compatibility degrees,
//! [`clusters`] clusters and expansions, [`polytope`] the realization and its
//! checks. [`pipeline`] strings them together.

pub mod cartan;
pub mod clusters;
pub mod compat;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod oracle_models;
pub mod pipeline;
pub mod polytope;
pub mod report;
pub mod table;
pub mod tau;

pub use cartan::{build_root_system, CartanType, Family, RootCatalog, RootVec, Sign};
pub use error::{Error, Result};
