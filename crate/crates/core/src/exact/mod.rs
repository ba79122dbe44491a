//! Exact rational arithmetic: vectors, determinants, linear programming and
//! sparse polynomials. No floating point is used anywhere in this crate.

pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use lp::{lp_strict_feasible, LinearProgram, LpOutcome};
pub use matrix::{affine_dimension, RationalMatrix};
pub use poly::{Coefficient, Monomial, Polynomial};
pub use rational::{format_rational, int, parse_rational, parse_rational_list, rat, Rational, RationalVector};
