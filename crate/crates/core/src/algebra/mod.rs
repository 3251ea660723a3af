//! Exact arithmetic foundation: rationals, intervals, univariate and
//! bivariate polynomials, and real root isolation.

pub mod bivariate;
pub mod interval;
pub mod rational;
pub mod roots;
pub mod unipoly;

pub use bivariate::BivariatePoly;
pub use interval::{Box2, RationalInterval};
pub use rational::{int, parse_rational, ratio, Rational};
pub use roots::{
    cauchy_bound, common_nonpositive, isolate_real_roots, sign_on_interval, CommonNonpositive,
    ExclusionPiece, RealRoot, SignVerdict, SturmSequence,
};
pub use unipoly::{UniPoly, Var};
