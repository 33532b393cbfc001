//! Case files: one `key = value` pair per line, `#` starts a comment.
//!
//! ```text
//! gamma     = 1.4
//! cells     = 100
//! length    = 1.0
//! t_end     = 0.2
//! scheme    = heun          # first | heun
//! limiter_k = 0.75
//! left_bc   = wall 0.0
//! right_bc  = pressure 0.1
//! segment   = 0.5 1.0 0.0 1.0     # x_end rho u p, repeated left to right
//! segment   = 1.0 0.125 0.0 0.1
//! ```
//!
//! Boundary values: `wall V`, `pressure PI`, `jet Q T`, `nozzle T_s p_s`,
//! `supersonic`, `state RHO U P`, `periodic` (on both sides). Manifold
//! parameters are taken along the outward normal of each end.
//!
//! Instead of segments, `pulse = RHO0 U0 P0 AMPLITUDE` sets the isentropic
//! profile `ρ = ρ0 (1 + a sin(2πx/L))`, `p = p0 (ρ/ρ0)^γ`.
//!
//! The `exact` command reads `left_state = RHO U P` and either
//! `right_state = RHO U P` or `right_bc`, sampled on `samples` points of
//! `[xi_min, xi_max]`.

use std::fmt;

use prp::{BoundaryManifold, GasModel, LimiterStrength, PrimState, Scheme};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "`{}`: {}", self.key, self.message)
        } else {
            write!(f, "line {}: `{}`: {}", self.line, self.key, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BcSpec {
    Periodic,
    Manifold(BoundaryManifold),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x_end: f64,
    pub state: PrimState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub rho0: f64,
    pub u0: f64,
    pub p0: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Initial {
    Segments,
    Pulse(Pulse),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub gamma: f64,
    pub cv: Option<f64>,
    pub cells: usize,
    pub length: f64,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub scheme: String,
    pub limiter_k: f64,
    pub left_bc: Option<BcSpec>,
    pub right_bc: Option<BcSpec>,
    pub segments: Vec<Segment>,
    pub pulse: Option<Pulse>,
    pub snapshots: usize,
    pub left_state: Option<PrimState>,
    pub right_state: Option<PrimState>,
    pub xi_min: f64,
    pub xi_max: f64,
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            gamma: 1.4,
            cv: None,
            cells: 100,
            length: 1.0,
            cfl: None,
            t_end: None,
            scheme: "first".into(),
            limiter_k: LimiterStrength::STS.value(),
            left_bc: None,
            right_bc: None,
            segments: Vec::new(),
            pulse: None,
            snapshots: 1,
            left_state: None,
            right_state: None,
            xi_min: -2.0,
            xi_max: 2.0,
            samples: 401,
        }
    }
}

fn error(line: usize, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn numbers(line: usize, key: &str, words: &[&str], count: usize) -> Result<Vec<f64>, ConfigError> {
    if words.len() != count {
        return Err(error(line, key, format!("expected {count} number(s), found {}", words.len())));
    }
    words
        .iter()
        .map(|w| {
            w.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| error(line, key, format!("`{w}` is not a finite number")))
        })
        .collect()
}

fn number(line: usize, key: &str, value: &str) -> Result<f64, ConfigError> {
    let words: Vec<&str> = value.split_whitespace().collect();
    Ok(numbers(line, key, &words, 1)?[0])
}

fn count(line: usize, key: &str, value: &str) -> Result<usize, ConfigError> {
    value
        .parse::<usize>()
        .map_err(|_| error(line, key, format!("`{value}` is not a non-negative integer")))
}

fn state(line: usize, key: &str, words: &[&str]) -> Result<PrimState, ConfigError> {
    let v = numbers(line, key, words, 3)?;
    let w = PrimState::new(v[0], v[1], v[2]);
    if !w.is_physical() {
        return Err(error(line, key, "state needs rho > 0 and p > 0"));
    }
    Ok(w)
}

fn boundary(line: usize, key: &str, value: &str) -> Result<BcSpec, ConfigError> {
    let words: Vec<&str> = value.split_whitespace().collect();
    let (kind, args) = words
        .split_first()
        .ok_or_else(|| error(line, key, "missing boundary kind"))?;
    let manifold = match *kind {
        "periodic" => {
            numbers(line, key, args, 0)?;
            return Ok(BcSpec::Periodic);
        }
        "wall" => BoundaryManifold::MovingWall {
            v: if args.is_empty() { 0.0 } else { numbers(line, key, args, 1)?[0] },
        },
        "pressure" => BoundaryManifold::PressureOutflow {
            pi: numbers(line, key, args, 1)?[0],
        },
        "jet" => {
            let v = numbers(line, key, args, 2)?;
            BoundaryManifold::JetInflow { q: v[0], t: v[1] }
        }
        "nozzle" => {
            let v = numbers(line, key, args, 2)?;
            BoundaryManifold::NozzleInflow { t_s: v[0], p_s: v[1] }
        }
        "supersonic" => {
            numbers(line, key, args, 0)?;
            BoundaryManifold::SupersonicOutflow
        }
        "state" => BoundaryManifold::GivenState(state(line, key, args)?),
        other => return Err(error(line, key, format!("unknown boundary kind `{other}`"))),
    };
    manifold
        .validate()
        .map_err(|e| error(line, key, e.to_string()))?;
    Ok(BcSpec::Manifold(manifold))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| error(line, content, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "gamma" => cfg.gamma = number(line, key, value)?,
                "cv" => cfg.cv = Some(number(line, key, value)?),
                "cells" => cfg.cells = count(line, key, value)?,
                "length" => cfg.length = number(line, key, value)?,
                "cfl" => cfg.cfl = Some(number(line, key, value)?),
                "t_end" => cfg.t_end = Some(number(line, key, value)?),
                "scheme" => match value {
                    "first" | "heun" => cfg.scheme = value.to_string(),
                    _ => return Err(error(line, key, "expected `first` or `heun`")),
                },
                "limiter_k" => cfg.limiter_k = number(line, key, value)?,
                "left_bc" => cfg.left_bc = Some(boundary(line, key, value)?),
                "right_bc" => cfg.right_bc = Some(boundary(line, key, value)?),
                "segment" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    let v = numbers(line, key, &words, 4)?;
                    let w = PrimState::new(v[1], v[2], v[3]);
                    if !w.is_physical() {
                        return Err(error(line, key, "state needs rho > 0 and p > 0"));
                    }
                    if let Some(last) = cfg.segments.last() {
                        if !(v[0] > last.x_end) {
                            return Err(error(line, key, "segment ends must increase"));
                        }
                    }
                    cfg.segments.push(Segment { x_end: v[0], state: w });
                }
                "pulse" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    let v = numbers(line, key, &words, 4)?;
                    if !(v[0] > 0.0 && v[2] > 0.0 && v[3].abs() < 1.0) {
                        return Err(error(line, key, "needs rho0 > 0, p0 > 0 and |amplitude| < 1"));
                    }
                    cfg.pulse = Some(Pulse {
                        rho0: v[0],
                        u0: v[1],
                        p0: v[2],
                        amplitude: v[3],
                    });
                }
                "snapshots" => cfg.snapshots = count(line, key, value)?,
                "left_state" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    cfg.left_state = Some(state(line, key, &words)?);
                }
                "right_state" => {
                    let words: Vec<&str> = value.split_whitespace().collect();
                    cfg.right_state = Some(state(line, key, &words)?);
                }
                "xi_min" => cfg.xi_min = number(line, key, value)?,
                "xi_max" => cfg.xi_max = number(line, key, value)?,
                "samples" => cfg.samples = count(line, key, value)?,
                _ => return Err(error(line, key, "unknown key")),
            }
        }
        cfg.check()?;
        Ok(cfg)
    }

    fn check(&self) -> Result<(), ConfigError> {
        self.gas()?;
        if self.cells < 3 {
            return Err(error(0, "cells", "at least three cells are required"));
        }
        if !(self.length > 0.0) {
            return Err(error(0, "length", "must be > 0"));
        }
        if let Some(cfl) = self.cfl {
            if !(cfl > 0.0 && cfl <= 1.0) {
                return Err(error(0, "cfl", "must lie in (0, 1]"));
            }
        }
        if let Some(t) = self.t_end {
            if !(t > 0.0) {
                return Err(error(0, "t_end", "must be > 0"));
            }
        }
        LimiterStrength::new(self.limiter_k).map_err(|e| error(0, "limiter_k", e.to_string()))?;
        let periodic = [self.left_bc, self.right_bc].map(|b| b == Some(BcSpec::Periodic));
        if periodic[0] != periodic[1] {
            return Err(error(0, "left_bc", "periodic must be set on both ends"));
        }
        if !self.segments.is_empty() && self.pulse.is_some() {
            return Err(error(0, "pulse", "cannot be combined with segments"));
        }
        if let Some(last) = self.segments.last() {
            if last.x_end < self.length {
                return Err(error(0, "segment", "segments must cover the whole domain"));
            }
        }
        if !(self.xi_max > self.xi_min) {
            return Err(error(0, "xi_max", "must exceed xi_min"));
        }
        if self.samples < 2 {
            return Err(error(0, "samples", "at least two samples are required"));
        }
        Ok(())
    }

    pub fn gas(&self) -> Result<GasModel, ConfigError> {
        let gas = GasModel::new(self.gamma).map_err(|e| error(0, "gamma", e.to_string()))?;
        match self.cv {
            Some(cv) => gas.with_cv(cv).map_err(|e| error(0, "cv", e.to_string())),
            None => Ok(gas),
        }
    }

    pub fn scheme(&self) -> Scheme {
        match self.scheme.as_str() {
            "heun" => Scheme::Heun(LimiterStrength::new(self.limiter_k).expect("checked on parse")),
            _ => Scheme::FirstOrder,
        }
    }

    pub fn cfl(&self) -> f64 {
        self.cfl.unwrap_or_else(|| self.scheme().default_cfl())
    }

    pub fn initial(&self) -> Result<Initial, ConfigError> {
        match self.pulse {
            Some(p) => Ok(Initial::Pulse(p)),
            None if !self.segments.is_empty() => Ok(Initial::Segments),
            None => Err(error(0, "segment", "no initial condition given")),
        }
    }

    /// Initial primitive state at `x`.
    pub fn profile(&self, x: f64) -> PrimState {
        if let Some(p) = self.pulse {
            let rho = p.rho0 * (1.0 + p.amplitude * (2.0 * std::f64::consts::PI * x / self.length).sin());
            return PrimState::new(rho, p.u0, p.p0 * (rho / p.rho0).powf(self.gamma));
        }
        self.segments
            .iter()
            .find(|s| x < s.x_end)
            .or(self.segments.last())
            .map(|s| s.state)
            .expect("initial condition checked")
    }
}
