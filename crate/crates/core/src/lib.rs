//! Exact and approximate Riemann solvers for the one-dimensional Euler
//! equations of a polytropic gas, with partial Riemann problems at
//! boundaries and a MUSCL finite-volume driver.

pub mod boundary;
pub mod convergence;
pub mod error;
pub mod reconstruct;
pub mod riemann;
pub mod solver;
pub mod thermo;
pub mod waves;

pub use boundary::{solve_partial_left, solve_partial_right, BoundaryManifold, BoundarySolution};
pub use error::{Error, Result};
pub use reconstruct::{LimiterStrength, Mesh1D};
pub use riemann::{godunov_flux, RiemannSolution, StarState, WaveKind};
pub use solver::{BoundaryTraces, Boundaries, Diagnostics, Scheme, SimState, StepRecord};
pub use thermo::{ConsState, EntropyPair, Flux, GasModel, PrimState};
pub use waves::Side;
