//! Exact numeric kernel: integer polynomials, rational vectors, exact
//! elimination and rational linear feasibility. No floating point.

pub mod linalg;
pub mod lp;
pub mod poly;

pub use linalg::{nullspace_combination, solve_linear, RatVector};
pub use poly::{poly_inflate, poly_mul, IntPoly};
