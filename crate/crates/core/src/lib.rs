//! Maps geometric descriptions of topological quantum circuits onto a 3D
//! cluster lattice.
//!
//! The pipeline is [`geometry::parse`] → [`cycle::CycleGraph`] →
//! [`tubes::map_tubes`] → [`sheets::find_subsheets`] /
//! [`sheets::assemble_sheet`], followed by [`emit`] for the hardware
//! instruction stream and tracking document, and [`verify`] as an
//! independent stabilizer-product check.

pub mod cli;
pub mod cycle;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod mapper;
pub mod sheets;
pub mod tubes;
pub mod verify;

pub use error::{Error, Result};
