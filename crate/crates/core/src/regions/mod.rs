//! The planar sets `fR` (possible imaginary roots `i beta` at parameter
//! alpha) and `fS_j` (their `1/j` shadows): certified emptiness and cover
//! checks, and grid sampling for plots.

pub mod bnb;
pub mod grid;
pub mod polygon;

pub use bnb::{
    certify_r5p, certify_r5pp, fr_extent, validate_disks, BnbReport, BnbVerdict, DiskCoverReport, FrShape,
    NonResonanceReport, DEFAULT_DEPTH_LIMIT,
};
pub use grid::{grid_sample, CellClass, RegionGrid};
pub use polygon::{Location, Point, PolygonDisk};
