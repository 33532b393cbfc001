//! Error norms and observed orders of accuracy.

use crate::error::{Error, Result};
use crate::riemann::RiemannSolution;
use crate::solver::SimState;

/// `Σ |K| |ρ_K - ρ(x_K)|` against the exact solution of a Riemann problem
/// centred at `x0`, at the state's current time.
pub fn l1_density_error(state: &SimState, exact: &RiemannSolution, x0: f64) -> Result<f64> {
    if !(state.time > 0.0) {
        return Err(Error::Domain {
            what: "time",
            value: state.time,
        });
    }
    Ok(state
        .primitives()
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let xi = (state.mesh.center(j) - x0) / state.time;
            state.mesh.measure(j) * (w.rho - exact.sample(xi).rho).abs()
        })
        .sum())
}

/// Averages of consecutive blocks of `factor` values.
pub fn restrict(fine: &[f64], factor: usize) -> Result<Vec<f64>> {
    if factor == 0 || fine.len() % factor != 0 {
        return Err(Error::InvalidParameter {
            name: "restriction factor",
            value: factor as f64,
            reason: "must divide the number of fine cells",
        });
    }
    Ok(fine
        .chunks(factor)
        .map(|c| c.iter().sum::<f64>() / factor as f64)
        .collect())
}

/// L1 distance `h Σ |a_j - b_j|` on a uniform mesh of spacing `h`.
pub fn l1_distance(a: &[f64], b: &[f64], h: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() * h
}

/// Differences between successive levels, each level twice as fine as the
/// previous one: `e_l = ‖restrict(u_{l+1}) - u_l‖` on the coarse mesh.
pub fn self_convergence_errors(levels: &[Vec<f64>], length: f64) -> Result<Vec<f64>> {
    levels
        .windows(2)
        .map(|pair| {
            let coarse = &pair[0];
            let fine = restrict(&pair[1], 2)?;
            if fine.len() != coarse.len() {
                return Err(Error::InvalidParameter {
                    name: "levels",
                    value: pair[1].len() as f64,
                    reason: "each level must double the previous cell count",
                });
            }
            Ok(l1_distance(coarse, &fine, length / coarse.len() as f64))
        })
        .collect()
}

/// Observed order `log2(e_l / e_{l+1})` between successive errors.
pub fn eoc(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|e| (e[0] / e[1]).log2()).collect()
}
