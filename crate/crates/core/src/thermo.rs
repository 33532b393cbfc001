//! Polytropic perfect gas: equation of state, conversions between primitive
//! and conservative variables, entropy quantities and the Euler flux.
//!
//! The gas obeys `p = (γ-1) ρ e` with `e = c_v T`. Specific entropy is
//! measured from a reference state `(rho_ref, p_ref)`:
//! `s = c_v ln(rho_ref^γ / p_ref · p / ρ^γ)`.

use crate::error::{Error, Result};

/// Euler flux vector `(mass, momentum, energy)`.
pub type Flux = [f64; 3];

/// Constants of a polytropic perfect gas.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasModel {
    gamma: f64,
    c_v: f64,
    rho_ref: f64,
    p_ref: f64,
}

impl GasModel {
    /// Gas with ratio of specific heats `gamma`, `c_v = 1/(γ-1)` and unit
    /// reference state, so that `e = T` numerically.
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be finite and > 1",
            });
        }
        Ok(Self {
            gamma,
            c_v: 1.0 / (gamma - 1.0),
            rho_ref: 1.0,
            p_ref: 1.0,
        })
    }

    /// Diatomic gas, γ = 1.4.
    pub fn air() -> Self {
        Self::new(1.4).expect("1.4 is a valid ratio of specific heats")
    }

    pub fn with_cv(mut self, c_v: f64) -> Result<Self> {
        if !(c_v > 0.0) || !c_v.is_finite() {
            return Err(Error::InvalidParameter {
                name: "cv",
                value: c_v,
                reason: "must be finite and > 0",
            });
        }
        self.c_v = c_v;
        Ok(self)
    }

    pub fn with_reference(mut self, rho_ref: f64, p_ref: f64) -> Result<Self> {
        for (name, value) in [("rho_ref", rho_ref), ("p_ref", p_ref)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be finite and > 0",
                });
            }
        }
        self.rho_ref = rho_ref;
        self.p_ref = p_ref;
        Ok(self)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn c_v(&self) -> f64 {
        self.c_v
    }

    pub fn c_p(&self) -> f64 {
        self.gamma * self.c_v
    }

    pub fn rho_ref(&self) -> f64 {
        self.rho_ref
    }

    pub fn p_ref(&self) -> f64 {
        self.p_ref
    }

    /// Temperature of the reference state.
    pub fn t_ref(&self) -> f64 {
        self.p_ref / ((self.gamma - 1.0) * self.rho_ref * self.c_v)
    }

    /// Wave parameter `μ² = (γ-1)/(γ+1)`, always in `(0, 1)`.
    pub fn mu2(&self) -> f64 {
        (self.gamma - 1.0) / (self.gamma + 1.0)
    }

    pub fn cons_from_prim(&self, w: &PrimState) -> Result<ConsState> {
        w.check_physical()?;
        let e = w.p / ((self.gamma - 1.0) * w.rho);
        Ok(ConsState {
            rho: w.rho,
            mom: w.rho * w.u,
            ene: w.rho * e + 0.5 * w.rho * w.u * w.u,
        })
    }

    pub fn prim_from_cons(&self, w: &ConsState) -> Result<PrimState> {
        if !(w.rho > 0.0) || !w.rho.is_finite() {
            return Err(Error::Domain {
                what: "density",
                value: w.rho,
            });
        }
        let u = w.mom / w.rho;
        let p = (self.gamma - 1.0) * (w.ene - 0.5 * w.mom * u);
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::NonPhysical { rho: w.rho, p });
        }
        Ok(PrimState { rho: w.rho, u, p })
    }

    pub fn sound_speed(&self, w: &PrimState) -> Result<f64> {
        w.check_physical()?;
        Ok(self.celerity(w))
    }

    /// `sqrt(γ p / ρ)` without validation; callers guarantee a physical state.
    pub(crate) fn celerity(&self, w: &PrimState) -> f64 {
        (self.gamma * w.p / w.rho).sqrt()
    }

    pub fn internal_energy(&self, w: &PrimState) -> Result<f64> {
        w.check_physical()?;
        Ok(w.p / ((self.gamma - 1.0) * w.rho))
    }

    pub fn temperature(&self, w: &PrimState) -> Result<f64> {
        Ok(self.internal_energy(w)? / self.c_v)
    }

    pub fn specific_entropy(&self, w: &PrimState) -> Result<f64> {
        w.check_physical()?;
        let ratio = (self.rho_ref / w.rho).powf(self.gamma) * (w.p / self.p_ref);
        Ok(self.c_v * ratio.ln())
    }

    pub fn entropy_pair(&self, w: &PrimState) -> Result<EntropyPair> {
        let s = self.specific_entropy(w)?;
        let eta = -w.rho * s;
        Ok(EntropyPair { eta, xi: w.u * eta })
    }

    /// Gradient of the mathematical entropy with respect to the conservative
    /// variables: `(μ - u²/2, u, -1) / T` with the chemical potential
    /// `μ = e + p/ρ - T s`.
    pub fn entropy_variables(&self, w: &PrimState) -> Result<[f64; 3]> {
        let e = self.internal_energy(w)?;
        let t = e / self.c_v;
        let s = self.specific_entropy(w)?;
        let chemical_potential = e + w.p / w.rho - t * s;
        Ok([
            (chemical_potential - 0.5 * w.u * w.u) / t,
            w.u / t,
            -1.0 / t,
        ])
    }

    pub fn physical_flux(&self, w: &ConsState) -> Result<Flux> {
        let prim = self.prim_from_cons(w)?;
        Ok(prim_flux(&prim, w.ene))
    }

    /// Flux from primitive variables; total on vacuum states (zero flux).
    pub fn flux_of(&self, w: &PrimState) -> Flux {
        let ene = w.p / (self.gamma - 1.0) + 0.5 * w.rho * w.u * w.u;
        prim_flux(w, ene)
    }
}

fn prim_flux(w: &PrimState, ene: f64) -> Flux {
    let mom = w.rho * w.u;
    [mom, mom * w.u + w.p, w.u * (ene + w.p)]
}

/// Density, velocity, pressure.
///
/// `rho = p = 0` is the vacuum marker; its `u` carries no physical meaning.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimState {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl PrimState {
    pub const fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }

    pub const fn vacuum(u: f64) -> Self {
        Self { rho: 0.0, u, p: 0.0 }
    }

    pub fn is_vacuum(&self) -> bool {
        self.rho == 0.0 && self.p == 0.0
    }

    pub fn is_physical(&self) -> bool {
        self.rho > 0.0
            && self.p > 0.0
            && self.rho.is_finite()
            && self.p.is_finite()
            && self.u.is_finite()
    }

    pub(crate) fn check_physical(&self) -> Result<()> {
        if self.is_physical() {
            Ok(())
        } else {
            Err(Error::NonPhysical {
                rho: self.rho,
                p: self.p,
            })
        }
    }

    /// Reflection `(ρ, -u, p)`.
    pub fn mirror(&self) -> Self {
        Self {
            rho: self.rho,
            u: -self.u,
            p: self.p,
        }
    }
}

/// Density, momentum density, total energy density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsState {
    pub rho: f64,
    pub mom: f64,
    pub ene: f64,
}

impl ConsState {
    pub const fn new(rho: f64, mom: f64, ene: f64) -> Self {
        Self { rho, mom, ene }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.mom, self.ene]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self {
            rho: a[0],
            mom: a[1],
            ene: a[2],
        }
    }
}

/// Mathematical entropy `η = -ρ s` and its flux `ξ = u η`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyPair {
    pub eta: f64,
    pub xi: f64,
}
