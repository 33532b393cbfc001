//! Wave curves of the genuinely nonlinear fields and the states inside
//! rarefaction fans and behind shocks.
//!
//! Across a 1-wave from a left state `w0` the velocity behind the wave is
//! `u0 - ψ(p)` on the rarefaction branch (`p ≤ p0`) and `u0 - φ(p)` on the
//! shock branch (`p > p0`). A 3-wave connecting to a right state uses the
//! opposite sign.

use crate::error::{Error, Result};
use crate::thermo::{GasModel, PrimState};

/// Which nonlinear family: the 1-wave seen from its left state or the
/// 3-wave seen from its right state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

fn check_reference(rho0: f64, p0: f64) -> Result<()> {
    if !(rho0 > 0.0) || !rho0.is_finite() {
        return Err(Error::Domain {
            what: "reference density",
            value: rho0,
        });
    }
    if !(p0 > 0.0) || !p0.is_finite() {
        return Err(Error::Domain {
            what: "reference pressure",
            value: p0,
        });
    }
    Ok(())
}

/// Rarefaction curve `ψ(p; ρ0, p0) = 2c0/(γ-1) ((p/p0)^((γ-1)/2γ) - 1)`.
pub fn psi(p: f64, rho0: f64, p0: f64, gas: &GasModel) -> Result<f64> {
    check_reference(rho0, p0)?;
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::Domain {
            what: "pressure",
            value: p,
        });
    }
    Ok(psi_unchecked(p, rho0, p0, gas))
}

fn psi_unchecked(p: f64, rho0: f64, p0: f64, gas: &GasModel) -> f64 {
    let g = gas.gamma();
    let c0 = (g * p0 / rho0).sqrt();
    2.0 * c0 / (g - 1.0) * ((p / p0).powf((g - 1.0) / (2.0 * g)) - 1.0)
}

/// Shock curve `φ(p; ρ0, p0) = sqrt((1-μ²) / (ρ0 (p + μ² p0))) (p - p0)`.
pub fn phi_shock(p: f64, rho0: f64, p0: f64, gas: &GasModel) -> Result<f64> {
    check_reference(rho0, p0)?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain {
            what: "pressure",
            value: p,
        });
    }
    Ok(phi_unchecked(p, rho0, p0, gas))
}

fn phi_unchecked(p: f64, rho0: f64, p0: f64, gas: &GasModel) -> f64 {
    let mu2 = gas.mu2();
    ((1.0 - mu2) / (rho0 * (p + mu2 * p0))).sqrt() * (p - p0)
}

/// Velocity jump across the composite wave curve (ψ below `p0`, φ above)
/// and its derivative in `p`.
pub(crate) fn jump_and_slope(p: f64, w0: &PrimState, gas: &GasModel) -> (f64, f64) {
    let g = gas.gamma();
    if p <= w0.p {
        let c0 = gas.celerity(w0);
        let ratio = p / w0.p;
        let jump = 2.0 * c0 / (g - 1.0) * (ratio.powf((g - 1.0) / (2.0 * g)) - 1.0);
        let slope = ratio.powf(-(g + 1.0) / (2.0 * g)) / (w0.rho * c0);
        (jump, slope)
    } else {
        let mu2 = gas.mu2();
        let a = (1.0 - mu2) / w0.rho;
        let b = mu2 * w0.p;
        let root = (a / (p + b)).sqrt();
        let jump = root * (p - w0.p);
        let slope = root * (1.0 - (p - w0.p) / (2.0 * (p + b)));
        (jump, slope)
    }
}

/// Velocity on the wave curve issued from `w0` at pressure `p`.
pub fn wave_curve_velocity(p: f64, side: Side, w0: &PrimState, gas: &GasModel) -> Result<f64> {
    w0.check_physical()?;
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::Domain {
            what: "pressure",
            value: p,
        });
    }
    let (jump, _) = jump_and_slope(p, w0, gas);
    Ok(match side {
        Side::Left => w0.u - jump,
        Side::Right => w0.u + jump,
    })
}

/// Celerity bracket spanned by a fan that expands all the way to vacuum:
/// `[u - c, u + 2c/(γ-1)]` for a 1-fan, `[u - 2c/(γ-1), u + c]` for a 3-fan.
pub fn fan_bracket(side: Side, w_edge: &PrimState, gas: &GasModel) -> Result<(f64, f64)> {
    w_edge.check_physical()?;
    let c = gas.celerity(w_edge);
    let reach = 2.0 * c / (gas.gamma() - 1.0);
    Ok(match side {
        Side::Left => (w_edge.u - c, w_edge.u + reach),
        Side::Right => (w_edge.u - reach, w_edge.u + c),
    })
}

/// State at celerity `xi` inside a centred rarefaction fan attached to
/// `w_edge`. The returned state satisfies `u - c = ξ` (1-fan) or
/// `u + c = ξ` (3-fan) and has the entropy of `w_edge`.
pub fn fan_state(xi: f64, side: Side, w_edge: &PrimState, gas: &GasModel) -> Result<PrimState> {
    let (lo, hi) = fan_bracket(side, w_edge, gas)?;
    if !(xi >= lo && xi <= hi) {
        return Err(Error::OutsideFan { xi, lo, hi });
    }
    Ok(fan_state_unchecked(xi, side, w_edge, gas))
}

pub(crate) fn fan_state_unchecked(
    xi: f64,
    side: Side,
    w_edge: &PrimState,
    gas: &GasModel,
) -> PrimState {
    let g = gas.gamma();
    let c_edge = gas.celerity(w_edge);
    let (u, c) = match side {
        Side::Left => {
            let base = (g - 1.0) * w_edge.u + 2.0 * c_edge;
            ((base + 2.0 * xi) / (g + 1.0), (base - (g - 1.0) * xi) / (g + 1.0))
        }
        Side::Right => {
            let base = (g - 1.0) * w_edge.u - 2.0 * c_edge;
            ((base + 2.0 * xi) / (g + 1.0), ((g - 1.0) * xi - base) / (g + 1.0))
        }
    };
    if c <= 0.0 {
        return PrimState::vacuum(u);
    }
    let rho = w_edge.rho * (c / c_edge).powf(2.0 / (g - 1.0));
    let p = w_edge.p * (rho / w_edge.rho).powf(g);
    PrimState { rho, u, p }
}

/// Speed of the shock connecting `w0` to pressure `p_star > p0`.
pub fn shock_speed(p_star: f64, side: Side, w0: &PrimState, gas: &GasModel) -> Result<f64> {
    w0.check_physical()?;
    if !(p_star > w0.p) || !p_star.is_finite() {
        return Err(Error::NotAShock { p_star, p0: w0.p });
    }
    Ok(shock_speed_unchecked(p_star, side, w0, gas))
}

pub(crate) fn shock_speed_unchecked(p_star: f64, side: Side, w0: &PrimState, gas: &GasModel) -> f64 {
    let mu2 = gas.mu2();
    let speed = ((p_star + mu2 * w0.p) / ((1.0 - mu2) * w0.rho)).sqrt();
    match side {
        Side::Left => w0.u - speed,
        Side::Right => w0.u + speed,
    }
}

/// Density behind a wave reaching pressure `p_star` from `w0`: isentropic
/// for `p_star ≤ p0`, Hugoniot for `p_star > p0`.
pub fn post_wave_density(p_star: f64, w0: &PrimState, gas: &GasModel) -> Result<f64> {
    w0.check_physical()?;
    if !(p_star >= 0.0) || !p_star.is_finite() {
        return Err(Error::Domain {
            what: "pressure",
            value: p_star,
        });
    }
    Ok(post_wave_density_unchecked(p_star, w0, gas))
}

pub(crate) fn post_wave_density_unchecked(p_star: f64, w0: &PrimState, gas: &GasModel) -> f64 {
    if p_star <= w0.p {
        w0.rho * (p_star / w0.p).powf(1.0 / gas.gamma())
    } else {
        let mu2 = gas.mu2();
        w0.rho * (p_star + mu2 * w0.p) / (w0.p + mu2 * p_star)
    }
}
