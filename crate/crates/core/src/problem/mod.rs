//! Problem files: a JSON document whose polynomial entries are strings in a
//! small expression language over the parameter `a`.

mod expr;
mod file;

pub use expr::{parse_constant, parse_expr, parse_poly, Expr, Pos};
pub use file::{load_problem, parse_problem};
