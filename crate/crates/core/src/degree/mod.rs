//! Validator-grade floating-point tools on concrete selectors: winding
//! numbers of `(alpha, beta) -> P(alpha)(i beta)` over polygons, the crossing
//! identity, and eigenvalue paths with resonance detection. Nothing here
//! feeds a certificate verdict.

mod numeric;
mod selector;
mod tracking;
mod winding;

pub use numeric::{eval_complex, poly_roots};
pub use selector::SelectorPath;
pub use tracking::{find_resonances, track_roots, AxisEvent, EventKind, Resonance, RootPath, Sliding};
pub use winding::{crossing_identity_check, winding_number, CrossingReport, WindingResult};
