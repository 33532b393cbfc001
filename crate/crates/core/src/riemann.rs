//! Exact solution of the classical Riemann problem `R(W_l, W_r)`.
//!
//! The star pressure is the root of `f(p) = f_L(p) + f_R(p) + (u_r - u_l)`,
//! where `f_side` is the rarefaction curve ψ below the side pressure and the
//! shock curve φ above it. `f` is increasing and concave, so Newton started
//! from the two-rarefaction (Osher) estimate converges quickly; bisection
//! takes over if it does not.

use crate::error::{Error, Result};
use crate::thermo::{ConsState, Flux, GasModel, PrimState};
use crate::waves::{
    self, fan_state_unchecked, jump_and_slope, post_wave_density_unchecked, shock_speed_unchecked,
    Side,
};

const NEWTON_STEPS: usize = 20;
const BISECTION_STEPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

/// Celerity interval `[lo, hi]` covered by one wave. Shocks have `lo == hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveBracket {
    pub lo: f64,
    pub hi: f64,
}

impl WaveBracket {
    pub fn point(speed: f64) -> Self {
        Self {
            lo: speed,
            hi: speed,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarState {
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave_kind: WaveKind,
    pub right_wave_kind: WaveKind,
}

/// What lies between the two nonlinear waves.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Middle {
    Star(StarState),
    /// Two rarefactions separated by vacuum on `band`.
    Vacuum { band: WaveBracket },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannSolution {
    pub gas: GasModel,
    pub left_state: PrimState,
    pub right_state: PrimState,
    pub middle: Middle,
    pub left_wave: WaveBracket,
    pub right_wave: WaveBracket,
}

fn sound_speeds(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<(f64, f64)> {
    w_l.check_physical()?;
    w_r.check_physical()?;
    Ok((gas.celerity(w_l), gas.celerity(w_r)))
}

/// Pressure at which the two rarefaction curves intersect.
pub fn osher_init(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<f64> {
    let (c_l, c_r) = sound_speeds(w_l, w_r, gas)?;
    let g = gas.gamma();
    let z = (g - 1.0) / (2.0 * g);
    let numerator = 0.5 * (g - 1.0) * (w_l.u - w_r.u) + c_l + c_r;
    if !(numerator > 0.0) {
        return Err(Error::Vacuum);
    }
    let denominator = c_l * w_l.p.powf(-z) + c_r * w_r.p.powf(-z);
    Ok((numerator / denominator).powf(1.0 / z))
}

/// True when the two rarefactions cannot meet: `u_r - u_l > 2(c_l + c_r)/(γ-1)`.
pub fn vacuum_check(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> bool {
    let c_l = gas.celerity(w_l);
    let c_r = gas.celerity(w_r);
    w_r.u - w_l.u > 2.0 * (c_l + c_r) / (gas.gamma() - 1.0)
}

fn residual(p: f64, w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> (f64, f64) {
    let (jl, sl) = jump_and_slope(p, w_l, gas);
    let (jr, sr) = jump_and_slope(p, w_r, gas);
    (jl + jr + (w_r.u - w_l.u), sl + sr)
}

fn assemble(p_star: f64, w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> StarState {
    let (jl, _) = jump_and_slope(p_star, w_l, gas);
    let (jr, _) = jump_and_slope(p_star, w_r, gas);
    let u_star = 0.5 * ((w_l.u - jl) + (w_r.u + jr));
    let kind = |p0: f64| {
        if p_star > p0 {
            WaveKind::Shock
        } else {
            WaveKind::Rarefaction
        }
    };
    StarState {
        p_star,
        u_star,
        rho_star_left: post_wave_density_unchecked(p_star, w_l, gas),
        rho_star_right: post_wave_density_unchecked(p_star, w_r, gas),
        left_wave_kind: kind(w_l.p),
        right_wave_kind: kind(w_r.p),
    }
}

fn check_solvable(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<(f64, f64)> {
    let (c_l, c_r) = sound_speeds(w_l, w_r, gas)?;
    if w_r.u - w_l.u >= 2.0 * (c_l + c_r) / (gas.gamma() - 1.0) {
        return Err(Error::Vacuum);
    }
    Ok((c_l, c_r))
}

/// Smallest `hi ≥ max(p_l, p_r)` obtained by doubling with `f(hi) ≥ 0`.
fn upper_bracket(f: impl Fn(f64) -> f64, start: f64) -> Result<f64> {
    let mut hi = start;
    for _ in 0..2000 {
        if f(hi) >= 0.0 {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::NoConvergence { iterations: 2000 })
}

/// Bisection on `[lo, hi]` with `f(lo) < 0 ≤ f(hi)`; stops on `|f| ≤ tol` or
/// when the interval can no longer shrink.
fn bisect(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    steps: usize,
) -> Option<f64> {
    for _ in 0..steps {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * hi || mid <= lo || mid >= hi {
            return Some(mid);
        }
        let value = f(mid);
        if value.abs() <= tol {
            return Some(mid);
        }
        if value < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// Star state by Newton iteration on the pressure residual.
pub fn solve_star(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<StarState> {
    let (c_l, c_r) = check_solvable(w_l, w_r, gas)?;
    if w_l == w_r {
        return Ok(assemble(w_l.p, w_l, w_r, gas));
    }
    let tol = 1e-12 * c_l.max(c_r);
    let p_floor = 1e-12 * w_l.p.max(w_r.p);
    let mut p = osher_init(w_l, w_r, gas)?.max(p_floor);
    for _ in 0..NEWTON_STEPS {
        let (f, df) = residual(p, w_l, w_r, gas);
        if f.abs() <= tol {
            return Ok(assemble(p, w_l, w_r, gas));
        }
        let step = f / df;
        let next = p - step;
        if next < p_floor {
            if p == p_floor {
                break;
            }
            p = p_floor;
            continue;
        }
        if (next - p).abs() <= 4.0 * f64::EPSILON * p {
            return Ok(assemble(next, w_l, w_r, gas));
        }
        p = next;
    }
    let f = |p: f64| residual(p, w_l, w_r, gas).0;
    let hi = upper_bracket(f, w_l.p.max(w_r.p))?;
    bisect(f, 0.0, hi, tol, BISECTION_STEPS)
        .map(|p| assemble(p, w_l, w_r, gas))
        .ok_or(Error::NoConvergence {
            iterations: NEWTON_STEPS + BISECTION_STEPS,
        })
}

/// Star state by pure bisection on the pressure residual, built only from
/// the public wave curves.
pub fn solve_star_bisection(
    w_l: &PrimState,
    w_r: &PrimState,
    gas: &GasModel,
) -> Result<StarState> {
    check_solvable(w_l, w_r, gas)?;
    if w_l == w_r {
        return Ok(assemble(w_l.p, w_l, w_r, gas));
    }
    let branch = |p: f64, w: &PrimState| {
        if p <= w.p {
            waves::psi(p, w.rho, w.p, gas).expect("validated state")
        } else {
            waves::phi_shock(p, w.rho, w.p, gas).expect("validated state")
        }
    };
    let f = |p: f64| branch(p, w_l) + branch(p, w_r) + (w_r.u - w_l.u);
    let hi = upper_bracket(f, w_l.p.max(w_r.p))?;
    let mut lo = 0.0;
    let mut hi = hi;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-15 * hi || mid <= lo || mid >= hi {
            return Ok(assemble(mid, w_l, w_r, gas));
        }
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        iterations: BISECTION_STEPS,
    })
}

impl RiemannSolution {
    pub fn solve(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<Self> {
        let (c_l, c_r) = sound_speeds(w_l, w_r, gas)?;
        let g = gas.gamma();
        let reach_l = w_l.u + 2.0 * c_l / (g - 1.0);
        let reach_r = w_r.u - 2.0 * c_r / (g - 1.0);
        if w_r.u - w_l.u >= 2.0 * (c_l + c_r) / (g - 1.0) {
            return Ok(Self {
                gas: *gas,
                left_state: *w_l,
                right_state: *w_r,
                middle: Middle::Vacuum {
                    band: WaveBracket {
                        lo: reach_l,
                        hi: reach_r,
                    },
                },
                left_wave: WaveBracket {
                    lo: w_l.u - c_l,
                    hi: reach_l,
                },
                right_wave: WaveBracket {
                    lo: reach_r,
                    hi: w_r.u + c_r,
                },
            });
        }
        let star = solve_star(w_l, w_r, gas)?;
        Ok(Self::from_star(star, w_l, w_r, gas))
    }

    pub(crate) fn from_star(
        star: StarState,
        w_l: &PrimState,
        w_r: &PrimState,
        gas: &GasModel,
    ) -> Self {
        let left_wave = match star.left_wave_kind {
            WaveKind::Shock => WaveBracket::point(shock_speed_unchecked(star.p_star, Side::Left, w_l, gas)),
            WaveKind::Rarefaction => {
                let inner = PrimState::new(star.rho_star_left, star.u_star, star.p_star);
                WaveBracket {
                    lo: w_l.u - gas.celerity(w_l),
                    hi: star.u_star - gas.celerity(&inner),
                }
            }
        };
        let right_wave = match star.right_wave_kind {
            WaveKind::Shock => {
                WaveBracket::point(shock_speed_unchecked(star.p_star, Side::Right, w_r, gas))
            }
            WaveKind::Rarefaction => {
                let inner = PrimState::new(star.rho_star_right, star.u_star, star.p_star);
                WaveBracket {
                    lo: star.u_star + gas.celerity(&inner),
                    hi: w_r.u + gas.celerity(w_r),
                }
            }
        };
        Self {
            gas: *gas,
            left_state: *w_l,
            right_state: *w_r,
            middle: Middle::Star(star),
            left_wave,
            right_wave,
        }
    }

    pub fn star(&self) -> Option<&StarState> {
        match &self.middle {
            Middle::Star(s) => Some(s),
            Middle::Vacuum { .. } => None,
        }
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(self.middle, Middle::Vacuum { .. })
    }

    /// Characteristic speeds in increasing order: 1-wave bracket, contact
    /// (or vacuum band), 3-wave bracket.
    pub fn wave_speeds(&self) -> [WaveBracket; 3] {
        let middle = match self.middle {
            Middle::Star(s) => WaveBracket::point(s.u_star),
            Middle::Vacuum { band } => band,
        };
        [self.left_wave, middle, self.right_wave]
    }

    /// Self-similar state at `xi = x/t`.
    pub fn sample(&self, xi: f64) -> PrimState {
        let gas = &self.gas;
        let (w_l, w_r) = (&self.left_state, &self.right_state);
        let (lw, rw) = (self.left_wave, self.right_wave);
        match self.middle {
            Middle::Star(s) => {
                if xi < s.u_star {
                    let inner = PrimState::new(s.rho_star_left, s.u_star, s.p_star);
                    match s.left_wave_kind {
                        WaveKind::Shock if xi < lw.lo => *w_l,
                        WaveKind::Shock => inner,
                        WaveKind::Rarefaction if xi < lw.lo => *w_l,
                        WaveKind::Rarefaction if xi < lw.hi => {
                            fan_state_unchecked(xi, Side::Left, w_l, gas)
                        }
                        WaveKind::Rarefaction => inner,
                    }
                } else {
                    let inner = PrimState::new(s.rho_star_right, s.u_star, s.p_star);
                    match s.right_wave_kind {
                        WaveKind::Shock if xi < rw.lo => inner,
                        WaveKind::Shock => *w_r,
                        WaveKind::Rarefaction if xi < rw.lo => inner,
                        WaveKind::Rarefaction if xi < rw.hi => {
                            fan_state_unchecked(xi, Side::Right, w_r, gas)
                        }
                        WaveKind::Rarefaction => *w_r,
                    }
                }
            }
            Middle::Vacuum { band } => {
                if xi < lw.lo {
                    *w_l
                } else if xi < band.lo {
                    fan_state_unchecked(xi, Side::Left, w_l, gas)
                } else if xi <= band.hi {
                    PrimState::vacuum(xi.clamp(band.lo, band.hi))
                } else if xi < rw.hi {
                    fan_state_unchecked(xi, Side::Right, w_r, gas)
                } else {
                    *w_r
                }
            }
        }
    }
}

/// Godunov flux from primitive states.
pub fn godunov_flux_prim(w_l: &PrimState, w_r: &PrimState, gas: &GasModel) -> Result<Flux> {
    let sol = RiemannSolution::solve(w_l, w_r, gas)?;
    Ok(gas.flux_of(&sol.sample(0.0)))
}

/// Physical flux of the Riemann solution sampled at `ξ = 0`.
pub fn godunov_flux(u_l: &ConsState, u_r: &ConsState, gas: &GasModel) -> Result<Flux> {
    let w_l = gas.prim_from_cons(u_l)?;
    let w_r = gas.prim_from_cons(u_r)?;
    godunov_flux_prim(&w_l, &w_r, gas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SOD_P: f64 = 0.30313017805;
    const SOD_U: f64 = 0.92745262005;
    const SOD_RHO_L: f64 = 0.42631942818;

    fn air() -> GasModel {
        GasModel::air()
    }

    fn sod() -> (PrimState, PrimState) {
        (PrimState::new(1.0, 0.0, 1.0), PrimState::new(0.125, 0.0, 0.1))
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn osher_values() {
        let gas = air();
        let w = PrimState::new(1.0, 0.0, 1.0);
        assert!((osher_init(&w, &w, &gas).unwrap() - 1.0).abs() < 1e-14);
        let p = osher_init(&w, &PrimState::new(1.0, 0.0, 0.1), &gas).unwrap();
        assert!((p - 0.534630).abs() < 1e-6, "{p}");
        let (l, r) = sod();
        let p = osher_init(&l, &r, &gas).unwrap();
        assert!((p - 0.3067666).abs() < 1e-7, "{p}");
    }

    #[test]
    fn osher_at_vacuum_boundary() {
        let gas = air();
        let c = 1.4f64.sqrt();
        let du = 2.0 * (c + c) / (gas.gamma() - 1.0);
        let l = PrimState::new(1.0, -0.5 * du, 1.0);
        let r = PrimState::new(1.0, 0.5 * du, 1.0);
        let verdict = osher_init(&l, &r, &gas);
        match verdict {
            Err(Error::Vacuum) => {}
            Ok(p) => assert!(p < 1e-12),
            Err(e) => panic!("{e}"),
        }
        assert!(matches!(solve_star(&l, &r, &gas), Err(Error::Vacuum)));
    }

    #[test]
    fn vacuum_check_examples() {
        let gas = air();
        let w = PrimState::new(1.0, 0.0, 1.0);
        assert!(!vacuum_check(&w, &w, &gas));
        let l = PrimState::new(1.0, -10.0, 1.0);
        let r = PrimState::new(1.0, 10.0, 1.0);
        assert!(vacuum_check(&l, &r, &gas));
        let c = 1.4f64.sqrt();
        let half = 0.5 * (2.0 * (c + c) / (gas.gamma() - 1.0));
        let l = PrimState::new(1.0, -half, 1.0);
        let r = PrimState::new(1.0, half, 1.0);
        assert!(!vacuum_check(&l, &r, &gas));
    }

    #[test]
    fn sod_star_state() {
        let (l, r) = sod();
        let gas = air();
        for s in [
            solve_star(&l, &r, &gas).unwrap(),
            solve_star_bisection(&l, &r, &gas).unwrap(),
        ] {
            assert!((s.p_star - SOD_P).abs() < 1e-10);
            assert!((s.u_star - SOD_U).abs() < 1e-10);
            assert!((s.rho_star_left - SOD_RHO_L).abs() < 1e-10);
            assert_eq!(s.left_wave_kind, WaveKind::Rarefaction);
            assert_eq!(s.right_wave_kind, WaveKind::Shock);
            let (res, _) = residual(s.p_star, &l, &r, &gas);
            assert!(res.abs() <= 1e-12 * 1.4f64.sqrt());
        }
    }

    #[test]
    fn equal_states_are_exact() {
        let gas = air();
        let w = PrimState::new(0.7, 0.3, 2.2);
        for s in [
            solve_star(&w, &w, &gas).unwrap(),
            solve_star_bisection(&w, &w, &gas).unwrap(),
        ] {
            assert_eq!(s.p_star, w.p);
            assert_eq!(s.u_star, w.u);
            assert_eq!(s.rho_star_left, w.rho);
            assert_eq!(s.rho_star_right, w.rho);
        }
    }

    #[test]
    fn mirrored_pair_gives_symmetric_shocks() {
        let gas = air();
        let w = PrimState::new(1.2, 0.8, 0.9);
        let s = solve_star(&w, &w.mirror(), &gas).unwrap();
        assert!(s.u_star.abs() < 1e-12);
        assert!(s.p_star > w.p);
        assert_eq!(s.left_wave_kind, WaveKind::Shock);
        assert_eq!(s.right_wave_kind, WaveKind::Shock);
        let still = PrimState::new(1.2, 0.0, 0.9);
        let f = godunov_flux_prim(&still, &still.mirror(), &gas).unwrap();
        assert_eq!(f, [0.0, 0.9, 0.0]);
    }

    #[test]
    fn strong_and_near_vacuum_problems_converge() {
        let gas = air();
        let cases = [
            (PrimState::new(1.0, 0.0, 1000.0), PrimState::new(1.0, 0.0, 0.01)),
            (PrimState::new(1.0, -2.0, 0.4), PrimState::new(1.0, 2.0, 0.4)),
            (PrimState::new(5.99924, 19.5975, 460.894), PrimState::new(5.99242, -6.19633, 46.095)),
            (PrimState::new(1.0, -5.9, 1.0), PrimState::new(1.0, 5.9, 1.0)),
            (PrimState::new(1.0, 0.0, 1e-6), PrimState::new(1.0, 0.0, 1e6)),
        ];
        for (l, r) in cases {
            let a = solve_star(&l, &r, &gas).unwrap();
            let b = solve_star_bisection(&l, &r, &gas).unwrap();
            assert!(rel(a.p_star, b.p_star) < 1e-10, "{l:?} {r:?}: {} vs {}", a.p_star, b.p_star);
        }
    }

    #[test]
    fn sampling_sod() {
        let (l, r) = sod();
        let gas = air();
        let sol = RiemannSolution::solve(&l, &r, &gas).unwrap();
        assert_eq!(sol.sample(-1.2), l);
        let at0 = sol.sample(0.0);
        assert!((at0.rho - SOD_RHO_L).abs() < 1e-10);
        assert!((at0.u - SOD_U).abs() < 1e-10);
        assert!((at0.p - SOD_P).abs() < 1e-10);
        let star = *sol.star().unwrap();
        let eps = 1e-9;
        let before = sol.sample(star.u_star - eps);
        let after = sol.sample(star.u_star + eps);
        assert_eq!(before.p, after.p);
        assert_eq!(before.u, after.u);
        assert_eq!(before.rho, star.rho_star_left);
        assert_eq!(after.rho, star.rho_star_right);
        assert_eq!(sol.sample(star.u_star).rho, star.rho_star_right);
        let sigma = sol.right_wave.lo;
        assert_eq!(sol.sample(sigma), r);
        assert_eq!(sol.sample(5.0), r);
        let speeds = sol.wave_speeds();
        for pair in speeds.windows(2) {
            assert!(pair[0].lo <= pair[0].hi && pair[0].hi <= pair[1].lo);
        }
    }

    #[test]
    fn sampling_vacuum() {
        let gas = air();
        let l = PrimState::new(1.0, -10.0, 1.0);
        let r = PrimState::new(1.0, 10.0, 1.0);
        let sol = RiemannSolution::solve(&l, &r, &gas).unwrap();
        let Middle::Vacuum { band } = sol.middle else {
            panic!("expected vacuum");
        };
        let edge = 2.0 * 1.4f64.sqrt() / 0.4;
        assert!((band.lo - (-10.0 + edge)).abs() < 1e-14);
        assert!((band.hi - (10.0 - edge)).abs() < 1e-14);
        let v = sol.sample(0.0);
        assert!(v.is_vacuum());
        assert_eq!(v.u, 0.0);
        assert_eq!(godunov_flux_prim(&l, &r, &gas).unwrap(), [0.0, 0.0, 0.0]);
        let inside_fan = sol.sample(-9.0);
        assert!(inside_fan.rho > 0.0 && inside_fan.rho < 1.0);
        assert_eq!(sol.sample(-20.0), l);
        assert_eq!(sol.sample(20.0), r);
    }

    #[test]
    fn exact_vacuum_boundary_gives_zero_width_band() {
        let gas = air();
        let c = 1.4f64.sqrt();
        let half = 0.5 * (2.0 * (c + c) / (gas.gamma() - 1.0));
        let l = PrimState::new(1.0, -half, 1.0);
        let r = PrimState::new(1.0, half, 1.0);
        let sol = RiemannSolution::solve(&l, &r, &gas).unwrap();
        let Middle::Vacuum { band } = sol.middle else {
            panic!("expected vacuum marker");
        };
        assert!(band.width().abs() < 1e-14);
        assert!(sol.sample(0.0).rho.abs() < 1e-12);
    }

    #[test]
    fn godunov_flux_consistency_and_sod() {
        let gas = air();
        let w = PrimState::new(0.6, -0.4, 1.9);
        let c = gas.cons_from_prim(&w).unwrap();
        let f = godunov_flux(&c, &c, &gas).unwrap();
        let exact = gas.physical_flux(&c).unwrap();
        for i in 0..3 {
            assert!((f[i] - exact[i]).abs() < 1e-14 * (1.0 + exact[i].abs()));
        }
        let (l, r) = sod();
        let f = godunov_flux(
            &gas.cons_from_prim(&l).unwrap(),
            &gas.cons_from_prim(&r).unwrap(),
            &gas,
        )
        .unwrap();
        let at0 = PrimState::new(SOD_RHO_L, SOD_U, SOD_P);
        let expected = gas.flux_of(&at0);
        for i in 0..3 {
            assert!((f[i] - expected[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_physical_input() {
        let gas = air();
        let bad = PrimState::new(-1.0, 0.0, 1.0);
        let good = PrimState::new(1.0, 0.0, 1.0);
        assert!(matches!(
            solve_star(&bad, &good, &gas),
            Err(Error::NonPhysical { .. })
        ));
        assert!(RiemannSolution::solve(&good, &PrimState::new(1.0, 0.0, 0.0), &gas).is_err());
    }

    fn state() -> impl Strategy<Value = PrimState> {
        (-2.3f64..2.3, -2.3f64..2.3, -1.0f64..1.0).prop_map(|(lr, lp, uu)| {
            let rho = 10f64.powf(lr / 2.3);
            let p = 10f64.powf(lp / 2.3);
            let c = (1.4 * p / rho).sqrt();
            PrimState::new(rho, 2.0 * c * uu, p)
        })
    }

    proptest! {
        #[test]
        fn newton_matches_bisection(l in state(), r in state(), five_thirds in any::<bool>()) {
            let gas = GasModel::new(if five_thirds { 5.0 / 3.0 } else { 1.4 }).unwrap();
            prop_assume!(!vacuum_check(&l, &r, &gas));
            let a = solve_star(&l, &r, &gas).unwrap();
            let b = solve_star_bisection(&l, &r, &gas).unwrap();
            prop_assert!(rel(a.p_star, b.p_star) < 1e-10);
            prop_assert!((a.u_star - b.u_star).abs() < 1e-10 * (1.0 + a.u_star.abs()));
        }

        #[test]
        fn sampled_waves_satisfy_jump_conditions(l in state(), r in state()) {
            let gas = air();
            let sol = RiemannSolution::solve(&l, &r, &gas).unwrap();
            prop_assume!(!sol.is_vacuum());
            let s = *sol.star().unwrap();
            let g = gas.gamma();
            let checks = [
                (s.left_wave_kind, sol.left_wave, l, PrimState::new(s.rho_star_left, s.u_star, s.p_star), 1.0),
                (s.right_wave_kind, sol.right_wave, PrimState::new(s.rho_star_right, s.u_star, s.p_star), r, -1.0),
            ];
            for (kind, bracket, upstream_left, downstream_right, sign) in checks {
                match kind {
                    WaveKind::Shock => {
                        let sigma = bracket.lo;
                        let a = sol.sample(sigma - 1e-12 * (1.0 + sigma.abs()));
                        let b = sol.sample(sigma);
                        prop_assert_eq!(a, upstream_left);
                        prop_assert_eq!(b, downstream_right);
                        let (fa, fb) = (gas.flux_of(&a), gas.flux_of(&b));
                        let ca = gas.cons_from_prim(&a).unwrap().to_array();
                        let cb = gas.cons_from_prim(&b).unwrap().to_array();
                        for i in 0..3 {
                            let res = fb[i] - fa[i] - sigma * (cb[i] - ca[i]);
                            prop_assert!(res.abs() < 1e-9 * (1.0 + fa[i].abs().max(fb[i].abs())));
                        }
                    }
                    WaveKind::Rarefaction => {
                        let edge = if sign > 0.0 { l } else { r };
                        let c_edge = gas.celerity(&edge);
                        let invariant = edge.u + sign * 2.0 * c_edge / (g - 1.0);
                        for k in 0..=10 {
                            let xi = bracket.lo + bracket.width() * k as f64 / 10.0;
                            let w = sol.sample(xi);
                            let c = gas.celerity(&w);
                            let drift = w.u + sign * 2.0 * c / (g - 1.0) - invariant;
                            prop_assert!(drift.abs() < 1e-11 * (1.0 + invariant.abs()));
                        }
                    }
                }
            }
        }

        #[test]
        fn mirror_covariance(l in state(), r in state(), xi in -4.0f64..4.0) {
            let gas = air();
            let a = RiemannSolution::solve(&l, &r, &gas).unwrap();
            let b = RiemannSolution::solve(&r.mirror(), &l.mirror(), &gas).unwrap();
            let speeds = a.wave_speeds();
            let near_edge = speeds.iter().any(|w| (xi - w.lo).abs() < 1e-9 || (xi - w.hi).abs() < 1e-9);
            prop_assume!(!near_edge);
            let wa = a.sample(xi);
            let wb = b.sample(-xi).mirror();
            let scale = 1.0 + wa.rho.abs() + wa.u.abs() + wa.p.abs();
            prop_assert!((wa.rho - wb.rho).abs() < 1e-10 * scale);
            prop_assert!((wa.u - wb.u).abs() < 1e-10 * scale);
            prop_assert!((wa.p - wb.p).abs() < 1e-10 * scale);
        }

        #[test]
        fn mass_flux_is_sampled_momentum(l in state(), r in state()) {
            let gas = air();
            let sol = RiemannSolution::solve(&l, &r, &gas).unwrap();
            let w = sol.sample(0.0);
            let f = godunov_flux_prim(&l, &r, &gas).unwrap();
            prop_assert_eq!(f[0], w.rho * w.u);
        }
    }
}
