//! Exact symbolic computation with Hopf algebras, quantum principal and
//! associated fibre bundles, connections, curvature, cross sections, and
//! gauge transformations.

pub mod bundle;
pub mod cli;
pub mod diffcalc;
pub mod dsl;
pub mod error;
pub mod gauge;
pub mod hopf;
pub mod ncalg;
pub mod presets;
pub mod qscalar;
pub mod report;
pub mod sample;

pub use error::{Error, Result};
