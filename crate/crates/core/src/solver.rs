//! Godunov finite-volume integration on a one-dimensional mesh.
//!
//! Cell means evolve by `|K| dW_K/dt + F_{K+½} - F_{K-½} = 0`. Interior
//! fluxes come from the exact Riemann solver, end fluxes from the partial
//! Riemann problems of the boundary manifolds. The second-order variant
//! feeds limited MUSCL interface states of `(ρ, ρu, p)` to the same fluxes and
//! advances with Heun's method.

use crate::boundary::{solve_partial_left, solve_partial_right, BoundaryManifold};
use crate::error::{Error, Result};
use crate::reconstruct::{muscl_face_values, LimiterStrength, Mesh1D};
use crate::riemann::godunov_flux_prim;
use crate::thermo::{ConsState, Flux, GasModel, PrimState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scheme {
    FirstOrder,
    Heun(LimiterStrength),
}

impl Scheme {
    pub fn default_cfl(&self) -> f64 {
        match self {
            Scheme::FirstOrder => 0.5,
            Scheme::Heun(_) => 0.4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundaries {
    Periodic,
    Manifolds {
        left: BoundaryManifold,
        right: BoundaryManifold,
    },
}

/// Totals over the mesh.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub mass: f64,
    pub momentum: f64,
    pub energy: f64,
    /// `Σ |K| η_K` with `η = -ρ s`.
    pub entropy: f64,
}

/// Traces on the two end faces from the latest flux evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct BoundaryTraces {
    pub left: Option<PrimState>,
    pub right: Option<PrimState>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub diagnostics: Diagnostics,
    pub traces: BoundaryTraces,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimState {
    pub mesh: Mesh1D,
    pub cells: Vec<ConsState>,
    pub time: f64,
    pub step: usize,
    pub boundaries: Boundaries,
    pub gas: GasModel,
    pub traces: BoundaryTraces,
}

type Rates = Vec<[f64; 3]>;

impl SimState {
    pub fn new(mesh: Mesh1D, cells: Vec<ConsState>, boundaries: Boundaries, gas: GasModel) -> Result<Self> {
        if cells.len() != mesh.cells() {
            return Err(Error::InvalidParameter {
                name: "cells",
                value: cells.len() as f64,
                reason: "one state per mesh cell is required",
            });
        }
        if let Boundaries::Manifolds { left, right } = &boundaries {
            left.validate()?;
            right.validate()?;
        }
        for (j, c) in cells.iter().enumerate() {
            gas.prim_from_cons(c).map_err(|_| Error::BlowUp {
                cell: j,
                step: 0,
                time: 0.0,
                rho: c.rho,
                p: (gas.gamma() - 1.0) * (c.ene - 0.5 * c.mom * c.mom / c.rho),
            })?;
        }
        Ok(Self {
            mesh,
            cells,
            time: 0.0,
            step: 0,
            boundaries,
            gas,
            traces: BoundaryTraces::default(),
        })
    }

    /// Cells initialised from a primitive profile sampled at cell centres.
    pub fn from_profile(
        mesh: Mesh1D,
        profile: impl Fn(f64) -> PrimState,
        boundaries: Boundaries,
        gas: GasModel,
    ) -> Result<Self> {
        let cells = (0..mesh.cells())
            .map(|j| gas.cons_from_prim(&profile(mesh.center(j))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(mesh, cells, boundaries, gas)
    }

    pub fn primitives(&self) -> Vec<PrimState> {
        self.cells
            .iter()
            .map(|c| self.gas.prim_from_cons(c).expect("cells are kept physical"))
            .collect()
    }

    pub fn compute_dt(&self, cfl: f64) -> Result<f64> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "cfl",
                value: cfl,
                reason: "must lie in (0, 1]",
            });
        }
        let speed = self
            .primitives()
            .iter()
            .map(|w| w.u.abs() + self.gas.celerity(w))
            .fold(0.0, f64::max);
        if !(speed > 0.0) {
            return Err(Error::Stagnation);
        }
        Ok(cfl * self.mesh.min_measure() / speed)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let mut d = Diagnostics {
            mass: 0.0,
            momentum: 0.0,
            energy: 0.0,
            entropy: 0.0,
        };
        for (j, c) in self.cells.iter().enumerate() {
            let h = self.mesh.measure(j);
            d.mass += h * c.rho;
            d.momentum += h * c.mom;
            d.energy += h * c.ene;
            if let Ok(w) = self.gas.prim_from_cons(c) {
                d.entropy += h * self.gas.entropy_pair(&w).map(|e| e.eta).unwrap_or(0.0);
            }
        }
        d
    }

    fn to_prims(&self, cells: &[ConsState], stage_time: f64) -> Result<Vec<PrimState>> {
        cells
            .iter()
            .enumerate()
            .map(|(j, c)| {
                self.gas.prim_from_cons(c).map_err(|_| Error::BlowUp {
                    cell: j,
                    step: self.step + 1,
                    time: stage_time,
                    rho: c.rho,
                    p: (self.gas.gamma() - 1.0) * (c.ene - 0.5 * c.mom * c.mom / c.rho),
                })
            })
            .collect()
    }

    /// Interface states `(W⁻, W⁺)` on the `n + 1` faces; the two end faces
    /// carry the adjacent cell states (the periodic end face both wrap).
    fn interface_states(&self, prims: &[PrimState], scheme: Scheme) -> Vec<(PrimState, PrimState)> {
        let n = prims.len();
        let periodic = self.boundaries == Boundaries::Periodic;
        let faces: Vec<(PrimState, PrimState)> = match scheme {
            Scheme::FirstOrder => prims.iter().map(|w| (*w, *w)).collect(),
            Scheme::Heun(k) => {
                let pad = usize::from(periodic);
                let padded: Vec<PrimState> = if periodic {
                    std::iter::once(prims[n - 1])
                        .chain(prims.iter().copied())
                        .chain(std::iter::once(prims[0]))
                        .collect()
                } else {
                    prims.to_vec()
                };
                let rho: Vec<f64> = padded.iter().map(|w| w.rho).collect();
                let mom: Vec<f64> = padded.iter().map(|w| w.rho * w.u).collect();
                let p: Vec<f64> = padded.iter().map(|w| w.p).collect();
                let (fr, fm, fp) = (
                    muscl_face_values(&rho, k),
                    muscl_face_values(&mom, k),
                    muscl_face_values(&p, k),
                );
                (pad..pad + n)
                    .map(|j| {
                        (
                            PrimState::new(fr[j].0, fm[j].0 / fr[j].0, fp[j].0),
                            PrimState::new(fr[j].1, fm[j].1 / fr[j].1, fp[j].1),
                        )
                    })
                    .collect()
            }
        };
        let mut out = Vec::with_capacity(n + 1);
        out.push((faces[n - 1].1, faces[0].0));
        for j in 0..n - 1 {
            out.push((faces[j].1, faces[j + 1].0));
        }
        out.push((faces[n - 1].1, faces[0].0));
        out
    }

    /// `dW_K/dt` for the cell means `cells`.
    fn rates(&self, cells: &[ConsState], scheme: Scheme, stage_time: f64) -> Result<(Rates, BoundaryTraces)> {
        let gas = &self.gas;
        let prims = self.to_prims(cells, stage_time)?;
        let n = prims.len();
        let states = self.interface_states(&prims, scheme);
        let mut fluxes: Vec<Flux> = Vec::with_capacity(n + 1);
        let mut traces = BoundaryTraces::default();
        for (s, (wl, wr)) in states.iter().enumerate() {
            let flux = if s == 0 || s == n {
                match self.boundaries {
                    Boundaries::Periodic => godunov_flux_prim(wl, wr, gas)?,
                    Boundaries::Manifolds { left, right } => {
                        let sol = if s == 0 {
                            solve_partial_left(&left, &prims[0], gas)?
                        } else {
                            solve_partial_right(&prims[n - 1], &right, gas)?
                        };
                        if s == 0 {
                            traces.left = Some(sol.boundary_state);
                        } else {
                            traces.right = Some(sol.boundary_state);
                        }
                        sol.flux
                    }
                }
            } else {
                godunov_flux_prim(wl, wr, gas)?
            };
            fluxes.push(flux);
        }
        let rates = (0..n)
            .map(|j| {
                let h = self.mesh.measure(j);
                let mut r = [0.0; 3];
                for i in 0..3 {
                    r[i] = -(fluxes[j + 1][i] - fluxes[j][i]) / h;
                }
                r
            })
            .collect();
        Ok((rates, traces))
    }

    fn advance(base: &[ConsState], rates: &Rates, dt: f64) -> Vec<ConsState> {
        base.iter()
            .zip(rates)
            .map(|(c, r)| ConsState::new(c.rho + dt * r[0], c.mom + dt * r[1], c.ene + dt * r[2]))
            .collect()
    }

    fn commit(&mut self, cells: Vec<ConsState>, dt: f64, traces: BoundaryTraces) -> Result<()> {
        let time = self.time + dt;
        self.to_prims(&cells, time)?;
        self.cells = cells;
        self.time = time;
        self.step += 1;
        self.traces = traces;
        Ok(())
    }

    fn check_dt(dt: f64) -> Result<()> {
        if dt > 0.0 && dt.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                reason: "must be finite and > 0",
            })
        }
    }

    pub fn step_first_order(&mut self, dt: f64) -> Result<()> {
        Self::check_dt(dt)?;
        let (rates, traces) = self.rates(&self.cells, Scheme::FirstOrder, self.time)?;
        let next = Self::advance(&self.cells, &rates, dt);
        self.commit(next, dt, traces)
    }

    pub fn step_heun(&mut self, dt: f64, k: LimiterStrength) -> Result<()> {
        Self::check_dt(dt)?;
        let scheme = Scheme::Heun(k);
        let (rates, traces) = self.rates(&self.cells, scheme, self.time)?;
        let predicted = Self::advance(&self.cells, &rates, dt);
        let (rates2, _) = self.rates(&predicted, scheme, self.time + dt)?;
        let corrected = Self::advance(&predicted, &rates2, dt);
        let next = self
            .cells
            .iter()
            .zip(&corrected)
            .map(|(a, b)| ConsState::new(0.5 * (a.rho + b.rho), 0.5 * (a.mom + b.mom), 0.5 * (a.ene + b.ene)))
            .collect();
        self.commit(next, dt, traces)
    }

    pub fn step(&mut self, dt: f64, scheme: Scheme) -> Result<()> {
        match scheme {
            Scheme::FirstOrder => self.step_first_order(dt),
            Scheme::Heun(k) => self.step_heun(dt, k),
        }
    }

    /// Advance to `t_end`, the last step being shortened to land on it.
    /// `observer` sees every completed step.
    pub fn run_until(
        &mut self,
        t_end: f64,
        scheme: Scheme,
        cfl: f64,
        mut observer: impl FnMut(&SimState, &StepRecord),
    ) -> Result<()> {
        while self.time < t_end {
            let dt = self.compute_dt(cfl)?.min(t_end - self.time);
            let landing = self.time + dt >= t_end;
            self.step(dt, scheme)?;
            if landing {
                self.time = t_end;
            }
            let record = StepRecord {
                step: self.step,
                time: self.time,
                dt,
                diagnostics: self.diagnostics(),
                traces: self.traces,
            };
            observer(self, &record);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::riemann::RiemannSolution;

    fn air() -> GasModel {
        GasModel::air()
    }

    fn sod(cells: usize, boundaries: Boundaries) -> SimState {
        let mesh = Mesh1D::uniform(cells, 0.0, 1.0).unwrap();
        SimState::from_profile(
            mesh,
            |x| {
                if x < 0.5 {
                    PrimState::new(1.0, 0.0, 1.0)
                } else {
                    PrimState::new(0.125, 0.0, 0.1)
                }
            },
            boundaries,
            air(),
        )
        .unwrap()
    }

    fn walls() -> Boundaries {
        Boundaries::Manifolds {
            left: BoundaryManifold::MovingWall { v: 0.0 },
            right: BoundaryManifold::MovingWall { v: 0.0 },
        }
    }

    #[test]
    fn time_step_values() {
        let gas = GasModel::new(1.4).unwrap();
        let w = PrimState::new(1.4, 0.0, 1.0);
        let mesh = Mesh1D::uniform(3, 0.0, 3.0).unwrap();
        let state = SimState::from_profile(mesh, |_| w, Boundaries::Periodic, gas).unwrap();
        assert!((state.compute_dt(0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!((state.compute_dt(0.25).unwrap() - 0.25).abs() < 1e-15);
        assert!(state.compute_dt(0.0).is_err());
        assert!(state.compute_dt(1.5).is_err());

        let s = sod(100, walls());
        let max_speed = 1.4f64.sqrt().max((1.4f64 * 0.1 / 0.125).sqrt());
        assert!((s.compute_dt(0.5).unwrap() - 0.5 * 0.01 / max_speed).abs() < 1e-15);
    }

    #[test]
    fn constant_state_is_preserved() {
        let w = PrimState::new(0.8, 0.3, 1.1);
        let mesh = Mesh1D::uniform(20, 0.0, 1.0).unwrap();
        for boundaries in [
            Boundaries::Periodic,
            Boundaries::Manifolds {
                left: BoundaryManifold::GivenState(w),
                right: BoundaryManifold::GivenState(w),
            },
        ] {
            let mut state = SimState::from_profile(mesh.clone(), |_| w, boundaries, air()).unwrap();
            let initial = state.cells.clone();
            for scheme in [Scheme::FirstOrder, Scheme::Heun(LimiterStrength::STS)] {
                for _ in 0..5 {
                    let dt = state.compute_dt(0.4).unwrap();
                    state.step(dt, scheme).unwrap();
                }
            }
            for (a, b) in state.cells.iter().zip(&initial) {
                assert!((a.rho - b.rho).abs() < 1e-14);
                assert!((a.mom - b.mom).abs() < 1e-14);
                assert!((a.ene - b.ene).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rigid_walls_conserve_mass_and_energy() {
        let gas = air();
        let mesh = Mesh1D::new(vec![0.0, 0.5, 1.0, 1.5, 2.0]).unwrap();
        let profile = |x: f64| {
            if (0.5..1.5).contains(&x) {
                PrimState::new(2.0, 0.0, 2.0)
            } else {
                PrimState::new(1.0, 0.0, 1.0)
            }
        };
        let mut state = SimState::from_profile(mesh, profile, walls(), gas).unwrap();
        let start = state.diagnostics();
        for _ in 0..20 {
            let dt = state.compute_dt(0.5).unwrap();
            state.step_first_order(dt).unwrap();
            let left = state.traces.left.unwrap();
            let right = state.traces.right.unwrap();
            assert!(left.u.abs() < 1e-15 && right.u.abs() < 1e-15);
        }
        let end = state.diagnostics();
        assert!((end.mass - start.mass).abs() < 1e-14 * start.mass);
        assert!((end.energy - start.energy).abs() < 1e-14 * start.energy);
        assert!(end.momentum.abs() < 1e-13);
    }

    #[test]
    fn sod_first_order_is_close_and_monotone() {
        let mut state = sod(100, walls());
        state.run_until(0.2, Scheme::FirstOrder, 0.5, |_, _| {}).unwrap();
        assert_eq!(state.time, 0.2);
        let exact = RiemannSolution::solve(
            &PrimState::new(1.0, 0.0, 1.0),
            &PrimState::new(0.125, 0.0, 0.1),
            &air(),
        )
        .unwrap();
        let mut l1 = 0.0;
        for (j, w) in state.primitives().iter().enumerate() {
            let x = state.mesh.center(j);
            l1 += state.mesh.measure(j) * (w.rho - exact.sample((x - 0.5) / 0.2).rho).abs();
            assert!(w.rho <= 1.0 + 1e-10 && w.rho >= 0.125 - 1e-10);
        }
        assert!(l1 < 0.03, "{l1}");
    }

    #[test]
    fn blow_up_is_reported() {
        let gas = air();
        let mesh = Mesh1D::uniform(4, 0.0, 1.0).unwrap();
        let mut state = SimState::from_profile(
            mesh,
            |x| if x < 0.5 { PrimState::new(1.0, -5.0, 0.01) } else { PrimState::new(1.0, 5.0, 0.01) },
            walls(),
            gas,
        )
        .unwrap();
        let err = state.step_first_order(10.0).unwrap_err();
        assert!(matches!(err, Error::BlowUp { step: 1, .. }), "{err:?}");
    }

    #[test]
    fn rejects_bad_setup() {
        let mesh = Mesh1D::uniform(4, 0.0, 1.0).unwrap();
        let cells = vec![ConsState::new(1.0, 0.0, 2.5); 3];
        assert!(SimState::new(mesh.clone(), cells, Boundaries::Periodic, air()).is_err());
        let cells = vec![ConsState::new(1.0, 0.0, -1.0); 4];
        assert!(matches!(
            SimState::new(mesh.clone(), cells, Boundaries::Periodic, air()),
            Err(Error::BlowUp { .. })
        ));
        let mut ok = SimState::new(mesh, vec![ConsState::new(1.0, 0.0, 2.5); 4], Boundaries::Periodic, air()).unwrap();
        assert!(ok.step_first_order(-1.0).is_err());
    }

    #[test]
    fn periodic_heun_conserves() {
        let gas = air();
        let mesh = Mesh1D::uniform(64, 0.0, 1.0).unwrap();
        let mut state = SimState::from_profile(
            mesh,
            |x| {
                let rho = 1.0 + 0.2 * (2.0 * std::f64::consts::PI * x).sin();
                PrimState::new(rho, 0.5, rho.powf(1.4))
            },
            Boundaries::Periodic,
            gas,
        )
        .unwrap();
        let start = state.diagnostics();
        for _ in 0..100 {
            let dt = state.compute_dt(0.4).unwrap();
            state.step_heun(dt, LimiterStrength::STS).unwrap();
        }
        let end = state.diagnostics();
        assert!((end.mass - start.mass).abs() <= 1e-12 * start.mass);
        assert!((end.momentum - start.momentum).abs() <= 1e-12 * start.momentum.abs());
        assert!((end.energy - start.energy).abs() <= 1e-12 * start.energy);
    }
}
