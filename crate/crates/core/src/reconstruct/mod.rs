//! Limited second-order reconstruction.
//!
//! The one-dimensional MUSCL form extrapolates each cell value to its two
//! faces with `z ± ½ b φ_k(a/b)`, `a`, `b` being the backward and forward
//! differences. On polygonal cells the same limiter appears as the
//! α-coefficient applied to a Green gradient; see [`polygonal`].

pub mod polygonal;
pub mod polymesh;

use crate::error::{Error, Result};

pub use polygonal::{
    alpha_limiter, cell_gradient, extrapolate, face_mean, neighbour_bounds, reconstruct_field,
    CellVector, ReconstructionField, Variable,
};
pub use polymesh::{BoundaryKind, FaceSide, PolyCell, PolyFace, PolyMesh};

/// Limiter strength `k ∈ [1/2, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LimiterStrength(f64);

impl LimiterStrength {
    pub const MIN_MOD: Self = Self(0.5);
    pub const STS: Self = Self(0.75);
    pub const TOWARDS_4: Self = Self(1.0);

    pub fn new(k: f64) -> Result<Self> {
        if (0.5..=1.0).contains(&k) {
            Ok(Self(k))
        } else {
            Err(Error::InvalidParameter {
                name: "k",
                value: k,
                reason: "limiter strength must lie in [1/2, 1]",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for LimiterStrength {
    fn default() -> Self {
        Self::STS
    }
}

/// `φ_k(r) = 0` for `r ≤ 0`, else `min((1+r)/2, 2k·min(r, 1))`.
pub fn limiter_phi_k(r: f64, k: LimiterStrength) -> f64 {
    if !(r > 0.0) {
        return 0.0;
    }
    (0.5 * (1.0 + r)).min(2.0 * k.0 * r.min(1.0))
}

/// Half-slope `½ b φ_k(a/b)` from the backward difference `a` and forward
/// difference `b`; it is symmetric in `a` and `b`.
pub fn muscl_increment(a: f64, b: f64, k: LimiterStrength) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    0.5 * b * limiter_phi_k(a / b, k)
}

/// Ordered vertices of a one-dimensional mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D {
    vertices: Vec<f64>,
}

impl Mesh1D {
    pub fn new(vertices: Vec<f64>) -> Result<Self> {
        if vertices.len() < 4 {
            return Err(Error::InvalidParameter {
                name: "cells",
                value: vertices.len().saturating_sub(1) as f64,
                reason: "at least three cells are required",
            });
        }
        for pair in vertices.windows(2) {
            if !(pair[1] > pair[0]) || !pair[1].is_finite() || !pair[0].is_finite() {
                return Err(Error::InvalidParameter {
                    name: "vertex",
                    value: pair[1],
                    reason: "vertices must be finite and strictly increasing",
                });
            }
        }
        Ok(Self { vertices })
    }

    pub fn uniform(cells: usize, x0: f64, x1: f64) -> Result<Self> {
        if !(x1 > x0) {
            return Err(Error::InvalidParameter {
                name: "length",
                value: x1 - x0,
                reason: "must be > 0",
            });
        }
        let h = (x1 - x0) / cells as f64;
        Self::new((0..=cells).map(|j| x0 + h * j as f64).collect())
    }

    pub fn cells(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[f64] {
        &self.vertices
    }

    pub fn measure(&self, j: usize) -> f64 {
        self.vertices[j + 1] - self.vertices[j]
    }

    pub fn center(&self, j: usize) -> f64 {
        0.5 * (self.vertices[j] + self.vertices[j + 1])
    }

    pub fn min_measure(&self) -> f64 {
        (0..self.cells()).map(|j| self.measure(j)).fold(f64::INFINITY, f64::min)
    }
}

/// Left- and right-face values of every cell. The first and last cells
/// keep a flat profile.
pub fn muscl_face_values(values: &[f64], k: LimiterStrength) -> Vec<(f64, f64)> {
    let n = values.len();
    (0..n)
        .map(|j| {
            if j == 0 || j + 1 == n {
                return (values[j], values[j]);
            }
            let a = values[j] - values[j - 1];
            let b = values[j + 1] - values[j];
            let d = muscl_increment(a, b, k);
            (values[j] - d, values[j] + d)
        })
        .collect()
}

/// Pairs `(z⁻, z⁺)` on the interior interfaces `j + ½`, `j = 0..n-2`.
pub fn muscl_interface_states(values: &[f64], k: LimiterStrength) -> Vec<(f64, f64)> {
    let faces = muscl_face_values(values, k);
    faces.windows(2).map(|w| (w[0].1, w[1].0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PRESETS: [LimiterStrength; 3] = [
        LimiterStrength::MIN_MOD,
        LimiterStrength::STS,
        LimiterStrength::TOWARDS_4,
    ];

    /// The α-coefficient of a uniform 1D cell with neighbours at `-h`, `+h`.
    fn uniform_alpha_increment(zm: f64, z: f64, zp: f64, k: f64) -> f64 {
        let (m, big) = (zm.min(zp), zm.max(zp));
        if z <= m || z >= big {
            return 0.0;
        }
        let grad_times_half_h = 0.25 * (zp - zm);
        let alpha = (k * (big - z).min(z - m) / grad_times_half_h.abs()).min(1.0);
        alpha * grad_times_half_h
    }

    #[test]
    fn strength_validation() {
        assert!(LimiterStrength::new(0.49).is_err());
        assert!(LimiterStrength::new(1.01).is_err());
        assert!(LimiterStrength::new(f64::NAN).is_err());
        assert_eq!(LimiterStrength::default(), LimiterStrength::STS);
        assert_eq!(LimiterStrength::new(0.75).unwrap().value(), 0.75);
    }

    #[test]
    fn phi_fixed_points() {
        for k in PRESETS {
            assert_eq!(limiter_phi_k(1.0, k), 1.0);
            for r in [-3.0, -1e-9, 0.0] {
                assert_eq!(limiter_phi_k(r, k), 0.0);
            }
        }
    }

    #[test]
    fn min_mod_specialization() {
        let mut r = 0.0;
        while r < 10.0 {
            assert!((limiter_phi_k(r, LimiterStrength::MIN_MOD) - r.min(1.0)).abs() < 1e-15);
            r += 0.013;
        }
    }

    #[test]
    fn phi_matches_alpha_limiter_on_uniform_mesh() {
        for k in PRESETS {
            for i in -200..=200 {
                let r = i as f64 * 0.05;
                for b in [1.0, -0.3, 2.5] {
                    let a = r * b;
                    let expected = uniform_alpha_increment(-a, 0.0, b, k.value());
                    let got = muscl_increment(a, b, k);
                    assert!((expected - got).abs() <= 1e-14 * (1.0 + b.abs()), "k={k:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn constant_and_linear_fields() {
        let flat = vec![2.5; 8];
        for (lo, hi) in muscl_interface_states(&flat, LimiterStrength::STS) {
            assert_eq!((lo, hi), (2.5, 2.5));
        }
        let mesh = Mesh1D::uniform(10, 0.0, 1.0).unwrap();
        let linear: Vec<f64> = (0..10).map(|j| 3.0 * mesh.center(j) - 1.0).collect();
        let states = muscl_interface_states(&linear, LimiterStrength::TOWARDS_4);
        for (s, (lo, hi)) in states.iter().enumerate().skip(1).take(7) {
            let x = mesh.vertices()[s + 1];
            assert!((lo - (3.0 * x - 1.0)).abs() < 1e-14);
            assert!((hi - (3.0 * x - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn extremum_cells_are_flat() {
        let values = [0.0, 1.0, 3.0, 1.0, 0.5];
        let faces = muscl_face_values(&values, LimiterStrength::TOWARDS_4);
        assert_eq!(faces[2], (3.0, 3.0));
        assert_eq!(faces[0], (0.0, 0.0));
        assert_eq!(faces[4], (0.5, 0.5));
    }

    #[test]
    fn mesh_validation() {
        assert!(Mesh1D::new(vec![0.0, 1.0, 2.0]).is_err());
        assert!(Mesh1D::new(vec![0.0, 1.0, 1.0, 2.0]).is_err());
        let mesh = Mesh1D::uniform(4, -1.0, 1.0).unwrap();
        assert_eq!(mesh.cells(), 4);
        assert!((mesh.measure(2) - 0.5).abs() < 1e-15);
        assert!((mesh.min_measure() - 0.5).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn no_new_extrema(values in prop::collection::vec(-5.0f64..5.0, 3..40), k in 0.5f64..=1.0) {
            let k = LimiterStrength::new(k).unwrap();
            let faces = muscl_face_values(&values, k);
            for j in 1..values.len() - 1 {
                let lo = values[j - 1].min(values[j]).min(values[j + 1]);
                let hi = values[j - 1].max(values[j]).max(values[j + 1]);
                prop_assert!(faces[j].0 >= lo - 1e-14 && faces[j].0 <= hi + 1e-14);
                prop_assert!(faces[j].1 >= lo - 1e-14 && faces[j].1 <= hi + 1e-14);
            }
        }

        #[test]
        fn phi_is_bounded(r in -10.0f64..10.0, k in 0.5f64..=1.0) {
            let k = LimiterStrength::new(k).unwrap();
            let phi = limiter_phi_k(r, k);
            prop_assert!((0.0..=2.0).contains(&phi));
            prop_assert!(phi <= 2.0 * r.max(0.0) + 1e-15);
        }
    }
}
