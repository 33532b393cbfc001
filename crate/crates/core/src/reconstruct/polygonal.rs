//! Green gradient and α-limiter on polygonal cells.
//!
//! For one scalar `z` of the family `(ρ, ρu, ρv, p)` and a cell `K`:
//! face means `z̄_{K,f}` feed the gradient `∇z(K) = 1/|K| Σ |f| z̄_{K,f} n_f`;
//! the limited face values are `z_K + α_K ∇z(K)·(y_{K,f} - x_K)` with `α_K`
//! the largest value in `[0, 1]` keeping every increment within `k` times
//! the distance from `z_K` to the neighbourhood bounds.

use super::polymesh::{BoundaryKind, FaceSide, PolyMesh, Vec2};
use super::LimiterStrength;
use crate::error::{Error, Result};

/// Cell values `(ρ, ρu, ρv, p)`.
pub type CellVector = [f64; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    Density,
    MomentumX,
    MomentumY,
    Pressure,
}

impl Variable {
    pub const ALL: [Variable; 4] = [
        Variable::Density,
        Variable::MomentumX,
        Variable::MomentumY,
        Variable::Pressure,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Values seen on a solid face: the normal momentum is removed.
fn nonpenetrating(z: &CellVector, n: Vec2) -> CellVector {
    let normal_momentum = z[1] * n[0] + z[2] * n[1];
    [
        z[0],
        z[1] - normal_momentum * n[0],
        z[2] - normal_momentum * n[1],
        z[3],
    ]
}

fn cell_state(states: &[CellVector], cell: usize) -> Result<&CellVector> {
    states.get(cell).ok_or(Error::Topology {
        face: usize::MAX,
        cell,
    })
}

/// Mean value `z̄_{K,f}` of `var` on `face` as seen from `cell`.
pub fn face_mean(
    states: &[CellVector],
    mesh: &PolyMesh,
    face: usize,
    cell: usize,
    var: Variable,
) -> Result<f64> {
    let (n, side, theta) = mesh.orient(face, cell)?;
    let z = cell_state(states, cell)?;
    let i = var.index();
    Ok(match side {
        FaceSide::Cell(nb) => (1.0 - theta) * z[i] + theta * cell_state(states, nb)?[i],
        FaceSide::Boundary(BoundaryKind::Fluid) => z[i],
        FaceSide::Boundary(BoundaryKind::Solid) => nonpenetrating(z, n)[i],
    })
}

pub fn cell_gradient(states: &[CellVector], mesh: &PolyMesh, cell: usize, var: Variable) -> Result<Vec2> {
    let mut g = [0.0, 0.0];
    for &f in mesh.faces_of(cell) {
        let (n, _, _) = mesh.orient(f, cell)?;
        let weight = mesh.faces()[f].measure * face_mean(states, mesh, f, cell, var)?;
        g[0] += weight * n[0];
        g[1] += weight * n[1];
    }
    let measure = mesh.cells()[cell].measure;
    Ok([g[0] / measure, g[1] / measure])
}

/// Minimum and maximum of `var` over the neighbouring cells and the
/// solid-boundary face values of `cell`.
pub fn neighbour_bounds(
    states: &[CellVector],
    mesh: &PolyMesh,
    cell: usize,
    var: Variable,
) -> Result<(f64, f64)> {
    let z = cell_state(states, cell)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &f in mesh.faces_of(cell) {
        let (n, side, _) = mesh.orient(f, cell)?;
        let value = match side {
            FaceSide::Cell(nb) => cell_state(states, nb)?[var.index()],
            FaceSide::Boundary(BoundaryKind::Solid) => nonpenetrating(z, n)[var.index()],
            FaceSide::Boundary(BoundaryKind::Fluid) => continue,
        };
        lo = lo.min(value);
        hi = hi.max(value);
    }
    if lo > hi {
        let own = z[var.index()];
        return Ok((own, own));
    }
    Ok((lo, hi))
}

fn offset(mesh: &PolyMesh, cell: usize, face: usize) -> Vec2 {
    let x = mesh.cells()[cell].barycenter;
    let y = mesh.faces()[face].point;
    [y[0] - x[0], y[1] - x[1]]
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn alpha_with_gradient(
    states: &[CellVector],
    mesh: &PolyMesh,
    cell: usize,
    var: Variable,
    k: LimiterStrength,
    grad: Vec2,
) -> Result<f64> {
    let z = cell_state(states, cell)?[var.index()];
    let (lo, hi) = neighbour_bounds(states, mesh, cell, var)?;
    if z <= lo || z >= hi {
        return Ok(0.0);
    }
    let mut largest = 0.0f64;
    for &f in mesh.faces_of(cell) {
        let (_, side, _) = mesh.orient(f, cell)?;
        if side == FaceSide::Boundary(BoundaryKind::Fluid) {
            continue;
        }
        largest = largest.max(dot(grad, offset(mesh, cell, f)).abs());
    }
    if largest == 0.0 {
        return Ok(1.0);
    }
    Ok((k.value() * (hi - z).min(z - lo) / largest).min(1.0))
}

/// Limiting coefficient `α_K ∈ [0, 1]`.
pub fn alpha_limiter(
    states: &[CellVector],
    mesh: &PolyMesh,
    cell: usize,
    var: Variable,
    k: LimiterStrength,
) -> Result<f64> {
    let grad = cell_gradient(states, mesh, cell, var)?;
    alpha_with_gradient(states, mesh, cell, var, k, grad)
}

/// Limited value `z_{K,f}` at the face point of `face`.
pub fn extrapolate(
    states: &[CellVector],
    mesh: &PolyMesh,
    cell: usize,
    face: usize,
    var: Variable,
    k: LimiterStrength,
) -> Result<f64> {
    mesh.orient(face, cell)?;
    let grad = cell_gradient(states, mesh, cell, var)?;
    let alpha = alpha_with_gradient(states, mesh, cell, var, k, grad)?;
    Ok(cell_state(states, cell)?[var.index()] + alpha * dot(grad, offset(mesh, cell, face)))
}

/// Reconstruction of one variable on every cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ReconstructionField {
    pub variable: Variable,
    pub values: Vec<f64>,
    pub gradients: Vec<Vec2>,
    pub alphas: Vec<f64>,
    /// Face values per cell, in the order of [`PolyMesh::faces_of`].
    pub face_values: Vec<Vec<f64>>,
}

impl ReconstructionField {
    pub fn face_value(&self, mesh: &PolyMesh, cell: usize, face: usize) -> Option<f64> {
        let slot = mesh.faces_of(cell).iter().position(|&f| f == face)?;
        Some(self.face_values[cell][slot])
    }
}

pub fn reconstruct_field(
    states: &[CellVector],
    mesh: &PolyMesh,
    var: Variable,
    k: LimiterStrength,
) -> Result<ReconstructionField> {
    let n = mesh.cells().len();
    if states.len() != n {
        return Err(Error::InvalidParameter {
            name: "cell values",
            value: states.len() as f64,
            reason: "one value per mesh cell is required",
        });
    }
    let mut field = ReconstructionField {
        variable: var,
        values: states.iter().map(|z| z[var.index()]).collect(),
        gradients: Vec::with_capacity(n),
        alphas: Vec::with_capacity(n),
        face_values: Vec::with_capacity(n),
    };
    for cell in 0..n {
        let grad = cell_gradient(states, mesh, cell, var)?;
        let alpha = alpha_with_gradient(states, mesh, cell, var, k, grad)?;
        let z = field.values[cell];
        field.face_values.push(
            mesh.faces_of(cell)
                .iter()
                .map(|&f| z + alpha * dot(grad, offset(mesh, cell, f)))
                .collect(),
        );
        field.gradients.push(grad);
        field.alphas.push(alpha);
    }
    Ok(field)
}
