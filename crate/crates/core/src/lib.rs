//! Numerical toolkit for the Dirichlet problem of the fractional Laplacian on
//! intervals and balls: pointwise operator evaluation by principal-value
//! quadrature, explicit solutions and barrier functions, a 1-D collocation
//! solver, plain and distance-weighted Hölder norm estimation on grids, and a
//! harness of named verification experiments.
//!
//! All numerics are generic over the scalar type (see [`scalar::Real`]);
//! `f64` aliases for the main entry points live at the crate root.

// Parameter guards are written as `!(x > 0)` so NaN is rejected along with
// the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_forms;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod harness;
pub mod linalg;
pub mod norms;
pub mod operator;
pub mod point;
pub mod quad;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use point::Point;
pub use scalar::Real;

/// f64 aliases for the common entry types.
pub type Point64 = point::Point<f64>;
pub type Domain64 = geometry::Domain<f64>;
pub type FracOrder64 = operator::FracOrder<f64>;
pub type FunctionHandle64 = operator::FunctionHandle<f64>;
pub type QuadratureSpec64 = operator::QuadratureSpec<f64>;
pub type GridFunction64 = grid::GridFunction<f64>;
pub type CollocationSystem64 = solver::CollocationSystem<f64>;
pub type NumericalSolution64 = solver::NumericalSolution<f64>;
pub type HolderSpec64 = norms::HolderSpec<f64>;
pub type RateFit64 = norms::RateFit<f64>;
