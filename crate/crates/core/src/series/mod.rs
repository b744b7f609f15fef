//! Exact polynomial, rational-function and truncated power-series algebra.

mod algebraic;
mod linear;
mod poly;
mod power;
mod ratfunc;

pub use algebraic::{algebraic_residual, AlgebraicEquation};
pub use linear::{solve_linear, LinearSystem};
pub use poly::IntPoly;
pub use power::{series_expand, PowerSeries};
pub use ratfunc::RatFunc;
