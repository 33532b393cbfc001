//! Boundary conditions as partial Riemann problems.
//!
//! A boundary manifold `M` is a set of admissible exterior states. The
//! partial problem `P(W_l, M)` is solved by the first waves of the classical
//! fan issued from `W_l`, stopping on a state `W_p ∈ M`; the remaining waves
//! are degenerate, so the result is the classical solution `R(W_l, W_p)`.
//!
//! Manifold parameters are expressed along the outward normal of the
//! boundary: a jet with `Q < 0` injects mass, a wall with `V < 0` moves into
//! the fluid. Left boundaries are solved by reflecting the interior state.

use crate::error::{Error, Result};
use crate::riemann::{Middle, RiemannSolution, StarState, WaveBracket, WaveKind};
use crate::thermo::{Flux, GasModel, PrimState};
use crate::waves::{fan_state_unchecked, jump_and_slope, post_wave_density_unchecked, Side};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryManifold {
    /// Far-field state `w_inf`.
    GivenState(PrimState),
    /// Prescribed normal mass flux `q < 0` and temperature `t`.
    JetInflow { q: f64, t: f64 },
    /// Reservoir with stagnation temperature `t_s` and pressure `p_s`.
    NozzleInflow { t_s: f64, p_s: f64 },
    /// Prescribed static pressure.
    PressureOutflow { pi: f64 },
    SupersonicOutflow,
    /// Wall moving with normal velocity `v`; `v = 0` is a rigid wall.
    MovingWall { v: f64 },
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and > 0",
        })
    }
}

impl BoundaryManifold {
    pub fn name(&self) -> &'static str {
        match self {
            Self::GivenState(_) => "given-state",
            Self::JetInflow { .. } => "jet",
            Self::NozzleInflow { .. } => "nozzle",
            Self::PressureOutflow { .. } => "pressure-outflow",
            Self::SupersonicOutflow => "supersonic-outflow",
            Self::MovingWall { .. } => "wall",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::GivenState(w) => w.check_physical(),
            Self::JetInflow { q, t } => {
                if !(q < 0.0) || !q.is_finite() {
                    return Err(Error::InvalidParameter {
                        name: "Q",
                        value: q,
                        reason: "jet mass flux must be finite and < 0",
                    });
                }
                positive("T", t)
            }
            Self::NozzleInflow { t_s, p_s } => {
                positive("T_s", t_s)?;
                positive("p_s", p_s)
            }
            Self::PressureOutflow { pi } => positive("Pi", pi),
            Self::SupersonicOutflow => Ok(()),
            Self::MovingWall { v } => {
                if v.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter {
                        name: "V",
                        value: v,
                        reason: "must be finite",
                    })
                }
            }
        }
    }

    /// The same boundary seen from a reflected frame. Only an explicit
    /// state changes; normal-frame parameters are invariant.
    pub fn mirror(&self) -> Self {
        match *self {
            Self::GivenState(w) => Self::GivenState(w.mirror()),
            other => other,
        }
    }

    /// Largest relative violation of the manifold equations by `w`.
    pub fn membership_residual(&self, w: &PrimState, gas: &GasModel) -> Result<f64> {
        w.check_physical()?;
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        Ok(match *self {
            Self::GivenState(inf) => rel(w.rho, inf.rho)
                .max((w.u - inf.u).abs() / gas.celerity(&inf))
                .max(rel(w.p, inf.p)),
            Self::JetInflow { q, t } => rel(w.rho * w.u, q).max(rel(gas.temperature(w)?, t)),
            Self::NozzleInflow { t_s, p_s } => {
                let enthalpy = gas.c_p() * gas.temperature(w)? + 0.5 * w.u * w.u;
                let sigma = stagnation_entropy(t_s, p_s, gas);
                let s = gas.specific_entropy(w)?;
                rel(enthalpy, gas.c_p() * t_s).max((s - sigma).abs() / gas.c_v())
            }
            Self::PressureOutflow { pi } => rel(w.p, pi),
            Self::SupersonicOutflow => {
                let c = gas.celerity(w);
                (c - w.u).max(0.0) / c
            }
            Self::MovingWall { v } => (w.u - v).abs() / gas.celerity(w),
        })
    }
}

/// Resolved partial Riemann problem at one boundary face.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySolution {
    /// Full self-similar solution; the waves beyond the manifold state are
    /// degenerate.
    pub riemann: RiemannSolution,
    /// State reached on the manifold.
    pub manifold_state: PrimState,
    /// Trace at `ξ = 0`.
    pub boundary_state: PrimState,
    pub flux: Flux,
}

impl BoundarySolution {
    fn new(riemann: RiemannSolution, manifold_state: PrimState, boundary_state: PrimState) -> Self {
        let flux = riemann.gas.flux_of(&boundary_state);
        Self {
            riemann,
            manifold_state,
            boundary_state,
            flux,
        }
    }

    fn sampled(riemann: RiemannSolution, manifold_state: PrimState) -> Self {
        let trace = riemann.sample(0.0);
        Self::new(riemann, manifold_state, trace)
    }

    fn mirrored(&self) -> Self {
        Self::new(
            mirror_solution(&self.riemann),
            self.manifold_state.mirror(),
            self.boundary_state.mirror(),
        )
    }

    pub fn star(&self) -> Option<&StarState> {
        self.riemann.star()
    }
}

fn mirror_bracket(b: WaveBracket) -> WaveBracket {
    WaveBracket { lo: -b.hi, hi: -b.lo }
}

/// `R(W_l, W_r)` reflected into `R(mirror(W_r), mirror(W_l))`.
fn mirror_solution(sol: &RiemannSolution) -> RiemannSolution {
    let middle = match sol.middle {
        Middle::Star(s) => Middle::Star(StarState {
            p_star: s.p_star,
            u_star: -s.u_star,
            rho_star_left: s.rho_star_right,
            rho_star_right: s.rho_star_left,
            left_wave_kind: s.right_wave_kind,
            right_wave_kind: s.left_wave_kind,
        }),
        Middle::Vacuum { band } => Middle::Vacuum {
            band: mirror_bracket(band),
        },
    };
    RiemannSolution {
        gas: sol.gas,
        left_state: sol.right_state.mirror(),
        right_state: sol.left_state.mirror(),
        middle,
        left_wave: mirror_bracket(sol.right_wave),
        right_wave: mirror_bracket(sol.left_wave),
    }
}

/// Classical solution reduced to a single 1-wave (and possibly a contact)
/// ending on `manifold_state`, whose pressure and velocity are `p_star`,
/// `u_star`.
fn one_wave_solution(
    w_l: &PrimState,
    p_star: f64,
    u_star: f64,
    rho_contact: f64,
    gas: &GasModel,
) -> (RiemannSolution, PrimState) {
    let rho_star_left = post_wave_density_unchecked(p_star, w_l, gas);
    let manifold_state = PrimState::new(rho_contact, u_star, p_star);
    let star = StarState {
        p_star,
        u_star,
        rho_star_left,
        rho_star_right: rho_contact,
        left_wave_kind: if p_star > w_l.p {
            WaveKind::Shock
        } else {
            WaveKind::Rarefaction
        },
        right_wave_kind: WaveKind::Rarefaction,
    };
    (
        RiemannSolution::from_star(star, w_l, &manifold_state, gas),
        manifold_state,
    )
}

/// Velocity behind the 1-wave from `w_l` at pressure `p`, and its
/// derivative.
fn left_curve(p: f64, w_l: &PrimState, gas: &GasModel) -> (f64, f64) {
    let (jump, slope) = jump_and_slope(p, w_l, gas);
    (w_l.u - jump, -slope)
}

fn stagnation_entropy(t_s: f64, p_s: f64, gas: &GasModel) -> f64 {
    let g = gas.gamma();
    gas.c_v() * ((t_s / gas.t_ref()).powf(g) * (p_s / gas.p_ref()).powf(1.0 - g)).ln()
}

/// Root of `f` on `[lo, hi]` with a sign change, by Newton steps kept
/// inside a shrinking bisection bracket.
fn safeguarded_root(
    f: impl Fn(f64) -> (f64, f64),
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> Result<f64> {
    let f_lo = f(lo).0;
    let rising = f_lo < 0.0;
    let mut x = hi;
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx.abs() <= tol {
            return Ok(x);
        }
        if (fx < 0.0) == rising {
            lo = x;
        } else {
            hi = x;
        }
        if hi - lo <= 1e-15 * hi.abs() {
            return Ok(0.5 * (lo + hi));
        }
        let newton = x - fx / dfx;
        x = if newton > lo && newton < hi && newton.is_finite() {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::NoConvergence { iterations: 200 })
}

/// Pressure behind the 1-wave that brings `w_l` to velocity `v`.
pub fn wall_pressure(v: f64, w_l: &PrimState, gas: &GasModel) -> Result<f64> {
    w_l.check_physical()?;
    if !v.is_finite() {
        return Err(Error::Domain {
            what: "wall velocity",
            value: v,
        });
    }
    let g = gas.gamma();
    let c_l = gas.celerity(w_l);
    let opening = v - w_l.u;
    if opening >= 0.0 {
        let reach = 2.0 * c_l / (g - 1.0);
        if opening >= reach {
            return Err(Error::WallVacuum {
                velocity: v,
                limit: w_l.u + reach,
            });
        }
        Ok(w_l.p * (1.0 - opening / reach).powf(2.0 * g / (g - 1.0)))
    } else {
        let du2 = opening * opening;
        let a = 2.0 / ((g + 1.0) * w_l.rho);
        let b = gas.mu2() * w_l.p;
        let x = (du2 + (du2 * du2 + 4.0 * a * du2 * (w_l.p + b)).sqrt()) / (2.0 * a);
        Ok(w_l.p + x)
    }
}

fn solve_jet(w_l: &PrimState, q: f64, t: f64, gas: &GasModel) -> Result<BoundarySolution> {
    let target = (gas.gamma() - 1.0) * gas.c_v() * q * t;
    let g = |p: f64| {
        let (u, du) = left_curve(p, w_l, gas);
        (p * u - target, u + p * du)
    };
    let mut hi = w_l.p;
    let mut doublings = 0;
    while g(hi).0 > 0.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 2000 {
            return Err(Error::NoIntersection { manifold: "jet" });
        }
    }
    let p_star = safeguarded_root(g, 0.0, hi, 1e-14 * target.abs())?;
    let (u_star, _) = left_curve(p_star, w_l, gas);
    if !(u_star < 0.0) {
        return Err(Error::WrongSign {
            manifold: "jet",
            u_star,
        });
    }
    let (sol, on_manifold) = one_wave_solution(w_l, p_star, u_star, q / u_star, gas);
    Ok(BoundarySolution::sampled(sol, on_manifold))
}

fn solve_nozzle(w_l: &PrimState, t_s: f64, p_s: f64, gas: &GasModel) -> Result<BoundarySolution> {
    let g = gas.gamma();
    let k = (g - 1.0) / g;
    let h_s = gas.c_p() * t_s;
    let h = |p: f64| {
        let (u, du) = left_curve(p, w_l, gas);
        let ratio = p / p_s;
        (
            u * u / (2.0 * h_s) + ratio.powf(k) - 1.0,
            u * du / h_s + k * ratio.powf(k - 1.0) / p_s,
        )
    };
    let (u_top, _) = left_curve(p_s, w_l, gas);
    if u_top > 0.0 {
        return Err(Error::WrongSign {
            manifold: "nozzle",
            u_star: u_top,
        });
    }
    let p_zero = match wall_pressure(0.0, w_l, gas) {
        Ok(p) => p.min(p_s),
        Err(Error::WallVacuum { .. }) => 0.0,
        Err(e) => return Err(e),
    };
    if h(p_zero).0 > 0.0 {
        return Err(Error::NoIntersection { manifold: "nozzle" });
    }
    let p_star = safeguarded_root(h, p_zero, p_s, 1e-15)?;
    let (u_star, _) = left_curve(p_star, w_l, gas);
    if u_star > 0.0 {
        return Err(Error::WrongSign {
            manifold: "nozzle",
            u_star,
        });
    }
    let sigma = stagnation_entropy(t_s, p_s, gas);
    let rho_contact = gas.rho_ref()
        * (p_star / gas.p_ref()).powf(1.0 / g)
        * (-sigma / (g * gas.c_v())).exp();
    let (sol, on_manifold) = one_wave_solution(w_l, p_star, u_star, rho_contact, gas);
    Ok(BoundarySolution::sampled(sol, on_manifold))
}

fn solve_supersonic(w_l: &PrimState, gas: &GasModel) -> Result<BoundarySolution> {
    let g = gas.gamma();
    let c_l = gas.celerity(w_l);
    if w_l.u - c_l >= 0.0 {
        let sol = RiemannSolution::solve(w_l, w_l, gas)?;
        return Ok(BoundarySolution::new(sol, *w_l, *w_l));
    }
    let reach = w_l.u + 2.0 * c_l / (g - 1.0);
    if (g - 1.0) * w_l.u + 2.0 * c_l <= 0.0 {
        let sol = RiemannSolution {
            gas: *gas,
            left_state: *w_l,
            right_state: PrimState::vacuum(0.0),
            middle: Middle::Vacuum {
                band: WaveBracket {
                    lo: reach,
                    hi: f64::INFINITY,
                },
            },
            left_wave: WaveBracket {
                lo: w_l.u - c_l,
                hi: reach,
            },
            right_wave: WaveBracket::point(f64::INFINITY),
        };
        let empty = PrimState::vacuum(0.0);
        return Ok(BoundarySolution::new(sol, empty, empty));
    }
    let sonic = fan_state_unchecked(0.0, Side::Left, w_l, gas);
    let (sol, on_manifold) = one_wave_solution(w_l, sonic.p, sonic.u, sonic.rho, gas);
    Ok(BoundarySolution::new(sol, on_manifold, sonic))
}

/// `P(W_l, M)`: boundary on the right of the interior state `w_l`.
pub fn solve_partial_right(
    w_l: &PrimState,
    m: &BoundaryManifold,
    gas: &GasModel,
) -> Result<BoundarySolution> {
    w_l.check_physical()?;
    m.validate()?;
    match *m {
        BoundaryManifold::GivenState(w_inf) => {
            let sol = RiemannSolution::solve(w_l, &w_inf, gas)?;
            Ok(BoundarySolution::sampled(sol, w_inf))
        }
        BoundaryManifold::JetInflow { q, t } => solve_jet(w_l, q, t, gas),
        BoundaryManifold::NozzleInflow { t_s, p_s } => solve_nozzle(w_l, t_s, p_s, gas),
        BoundaryManifold::PressureOutflow { pi } => {
            let (u_star, _) = left_curve(pi, w_l, gas);
            let rho = post_wave_density_unchecked(pi, w_l, gas);
            let (sol, on_manifold) = one_wave_solution(w_l, pi, u_star, rho, gas);
            Ok(BoundarySolution::sampled(sol, on_manifold))
        }
        BoundaryManifold::SupersonicOutflow => solve_supersonic(w_l, gas),
        BoundaryManifold::MovingWall { v } => {
            let p_star = wall_pressure(v, w_l, gas)?;
            let rho = post_wave_density_unchecked(p_star, w_l, gas);
            let (sol, on_manifold) = one_wave_solution(w_l, p_star, v, rho, gas);
            Ok(BoundarySolution::sampled(sol, on_manifold))
        }
    }
}

/// `P(M, W_r)`: boundary on the left of the interior state `w_r`, solved in
/// the reflected frame.
pub fn solve_partial_left(
    m: &BoundaryManifold,
    w_r: &PrimState,
    gas: &GasModel,
) -> Result<BoundarySolution> {
    let reflected = solve_partial_right(&w_r.mirror(), &m.mirror(), gas)?;
    Ok(reflected.mirrored())
}

/// Linearized characteristic amplitudes of the perturbation
/// `dz = (ρ', u', s')` about `w0`.
pub fn characteristic_variables(dz: [f64; 3], w0: &PrimState, gas: &GasModel) -> Result<[f64; 3]> {
    w0.check_physical()?;
    let c = gas.celerity(w0);
    let [drho, du, ds] = dz;
    let dp = c * c * drho + w0.p / gas.c_v() * ds;
    let scale = 2.0 * w0.rho * c * c;
    Ok([
        (dp - w0.rho * c * du) / scale,
        -ds / (c * c),
        (dp + w0.rho * c * du) / scale,
    ])
}

/// Right eigenvectors in `(ρ, u, s)` coordinates.
pub fn characteristic_basis(w0: &PrimState, gas: &GasModel) -> Result<[[f64; 3]; 3]> {
    w0.check_physical()?;
    let c = gas.celerity(w0);
    Ok([
        [w0.rho, -c, 0.0],
        [w0.p / gas.c_v(), 0.0, -c * c],
        [w0.rho, c, 0.0],
    ])
}

/// Perturbation `Σ φ_j R_j` rebuilt from its characteristic amplitudes.
pub fn from_characteristic_variables(
    phi: [f64; 3],
    w0: &PrimState,
    gas: &GasModel,
) -> Result<[f64; 3]> {
    let basis = characteristic_basis(w0, gas)?;
    let mut dz = [0.0; 3];
    for (amp, r) in phi.iter().zip(basis.iter()) {
        for i in 0..3 {
            dz[i] += amp * r[i];
        }
    }
    Ok(dz)
}

/// Nature of a right boundary for the linearized problem about `w0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FlowRegime {
    SupersonicInflow,
    SubsonicInflow,
    /// A characteristic speed vanishes; `u = 0` is the rigid wall.
    Characteristic,
    SubsonicOutflow,
    SupersonicOutflow,
}

impl FlowRegime {
    /// Number of characteristics entering the domain through the boundary.
    pub fn incoming(&self) -> usize {
        match self {
            Self::SupersonicInflow => 3,
            Self::SubsonicInflow => 2,
            Self::Characteristic | Self::SubsonicOutflow => 1,
            Self::SupersonicOutflow => 0,
        }
    }
}

pub fn classify_regime(w0: &PrimState, gas: &GasModel) -> Result<FlowRegime> {
    w0.check_physical()?;
    let c = gas.celerity(w0);
    let u = w0.u;
    Ok(if u == 0.0 || u == c || u == -c {
        FlowRegime::Characteristic
    } else if u < -c {
        FlowRegime::SupersonicInflow
    } else if u < 0.0 {
        FlowRegime::SubsonicInflow
    } else if u < c {
        FlowRegime::SubsonicOutflow
    } else {
        FlowRegime::SupersonicOutflow
    })
}
