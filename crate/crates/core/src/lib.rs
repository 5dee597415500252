//! Minimal denominators, cone minima on unimodular lattices and the
//! equidistribution experiments that tie them together.

pub mod error;
pub mod exact;
pub mod experiments;
pub mod haar;
pub mod lattice;
pub mod oracle;
pub mod par;
pub mod rng;
pub mod scalar;
pub mod stats;
pub mod surfaces;

pub use error::{Error, Result};
