use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error: {what} = {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("non-physical state (rho = {rho}, p = {p})")]
    NonPhysical { rho: f64, p: f64 },

    #[error("celerity {xi} lies outside the fan bracket [{lo}, {hi}]")]
    OutsideFan { xi: f64, lo: f64, hi: f64 },

    #[error("pressure {p_star} does not lie on the shock branch (p0 = {p0})")]
    NotAShock { p_star: f64, p0: f64 },

    #[error("vacuum appears between the two rarefactions")]
    Vacuum,

    #[error("pressure iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("no intersection between the 1-wave curve and the {manifold} manifold")]
    NoIntersection { manifold: &'static str },

    #[error("{manifold} intersection has u* = {u_star}, outside the inflow regime")]
    WrongSign { manifold: &'static str, u_star: f64 },

    #[error("wall velocity {velocity} exhausts the gas (limit {limit})")]
    WallVacuum { velocity: f64, limit: f64 },

    #[error("face {face} is not on the boundary of cell {cell}")]
    Topology { face: usize, cell: usize },

    #[error("mesh format error at line {line}: {message}")]
    MeshFormat { line: usize, message: String },

    #[error("maximum wave speed is zero, no time step can be derived")]
    Stagnation,

    #[error("non-physical update in cell {cell} at step {step} (t = {time}): rho = {rho}, p = {p}")]
    BlowUp {
        cell: usize,
        step: usize,
        time: f64,
        rho: f64,
        p: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
