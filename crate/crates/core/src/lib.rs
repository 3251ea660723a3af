//! Exact certification of interval Hopf-bifurcation hypotheses.
//!
//! Given a monic interval characteristic polynomial whose coefficient
//! intervals depend polynomially on a parameter `alpha`, the crate decides
//! (with exact rational arithmetic) the endpoint instability, zero-exclusion
//! and non-resonance conditions under which every selector of the interval
//! system undergoes a Hopf bifurcation, and assembles the results into a
//! machine-readable [`pipeline::Certificate`].
//!
//! Validator-grade floating-point tools (winding numbers, eigenvalue paths)
//! live in [`degree`] and never feed back into a certificate verdict.

pub mod algebra;
pub mod error;
pub mod family;
pub mod regions;
pub mod stability;
pub mod descartes;
pub mod degree;
pub mod pipeline;
pub mod problem;
pub mod cli;

pub use error::{Error, Result};
