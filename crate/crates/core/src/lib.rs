//! Simulation of a two-atom Rydberg controlled-phase gate driven through an
//! interaction-protected dark state, with a blockade gate for comparison.

pub mod analysis;
pub mod cases;
pub mod cli;
pub mod error;
pub mod hamiltonians;
pub mod linalg;
pub mod propagator;
pub mod protocol;
pub mod pulses;
pub mod quadrature;

pub use error::{Error, Result};
