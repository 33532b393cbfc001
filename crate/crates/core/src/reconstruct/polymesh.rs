//! Polygonal control volumes for the multidimensional reconstruction.
//!
//! Text format, one record per line, `#` starts a comment:
//!
//! ```text
//! cells N faces M
//! bx by measure                                  (N lines)
//! measure nx ny left right theta yx yy           (M lines)
//! ```
//!
//! `right` is a cell index or a boundary tag: `wall` and `solid` are solid
//! boundaries; `fluid`, `state`, `jet`, `nozzle`, `pressure`, `supersonic`,
//! `outflow` and `inflow` are fluid boundaries. The normal points from
//! `left` to `right` (outward on boundary faces), `theta` places the face
//! point `y = (1-θ) x_left + θ x_right` on the segment joining the
//! barycenters, and `(yx, yy)` is that point (the face barycenter on the
//! boundary, where `theta` is ignored).

use crate::error::{Error, Result};

pub type Vec2 = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    Fluid,
    Solid,
}

impl BoundaryKind {
    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "wall" | "solid" => Some(Self::Solid),
            "fluid" | "state" | "jet" | "nozzle" | "pressure" | "supersonic" | "outflow"
            | "inflow" => Some(Self::Fluid),
            _ => None,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Self::Fluid => "fluid",
            Self::Solid => "wall",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceSide {
    Cell(usize),
    Boundary(BoundaryKind),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyCell {
    pub barycenter: Vec2,
    pub measure: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolyFace {
    pub measure: f64,
    pub normal: Vec2,
    pub left: usize,
    pub right: FaceSide,
    pub theta: f64,
    pub point: Vec2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyMesh {
    cells: Vec<PolyCell>,
    faces: Vec<PolyFace>,
    cell_faces: Vec<Vec<usize>>,
}

fn format_error(line: usize, message: impl Into<String>) -> Error {
    Error::MeshFormat {
        line,
        message: message.into(),
    }
}

/// Intersection of the segment `x_l → x_r` with the line through the face
/// end points `a`, `b`: returns the segment parameter and the point.
pub fn segment_face_intersection(x_l: Vec2, x_r: Vec2, a: Vec2, b: Vec2) -> Option<(f64, Vec2)> {
    let d = [x_r[0] - x_l[0], x_r[1] - x_l[1]];
    let e = [b[0] - a[0], b[1] - a[1]];
    let det = d[0] * (-e[1]) - d[1] * (-e[0]);
    if det == 0.0 {
        return None;
    }
    let rhs = [a[0] - x_l[0], a[1] - x_l[1]];
    let t = (rhs[0] * (-e[1]) - rhs[1] * (-e[0])) / det;
    Some((t, [x_l[0] + t * d[0], x_l[1] + t * d[1]]))
}

impl PolyMesh {
    pub fn new(cells: Vec<PolyCell>, faces: Vec<PolyFace>) -> Result<Self> {
        for c in &cells {
            if !(c.measure > 0.0) || !c.barycenter.iter().all(|v| v.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "cell measure",
                    value: c.measure,
                    reason: "must be > 0 with a finite barycenter",
                });
            }
        }
        let mut cell_faces = vec![Vec::new(); cells.len()];
        for (f, face) in faces.iter().enumerate() {
            if !(face.measure > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "face measure",
                    value: face.measure,
                    reason: "must be > 0",
                });
            }
            let norm = face.normal[0].hypot(face.normal[1]);
            if !((norm - 1.0).abs() <= 1e-9) {
                return Err(Error::InvalidParameter {
                    name: "face normal length",
                    value: norm,
                    reason: "normal must be a unit vector",
                });
            }
            if !(0.0..=1.0).contains(&face.theta) {
                return Err(Error::InvalidParameter {
                    name: "theta",
                    value: face.theta,
                    reason: "must lie in [0, 1]",
                });
            }
            if face.left >= cells.len() {
                return Err(Error::Topology { face: f, cell: face.left });
            }
            cell_faces[face.left].push(f);
            if let FaceSide::Cell(r) = face.right {
                if r >= cells.len() || r == face.left {
                    return Err(Error::Topology { face: f, cell: r });
                }
                cell_faces[r].push(f);
            }
        }
        Ok(Self {
            cells,
            faces,
            cell_faces,
        })
    }

    /// `nx × ny` rectangles on `[0, lx] × [0, ly]`. Cell `(i, j)` has index
    /// `i + nx·j`. Boundary kinds are given in the order west, east, south,
    /// north.
    pub fn cartesian(nx: usize, ny: usize, lx: f64, ly: f64, sides: [BoundaryKind; 4]) -> Result<Self> {
        if nx == 0 || ny == 0 || !(lx > 0.0) || !(ly > 0.0) {
            return Err(Error::InvalidParameter {
                name: "cartesian mesh",
                value: (nx * ny) as f64,
                reason: "needs at least one cell and positive extents",
            });
        }
        let (dx, dy) = (lx / nx as f64, ly / ny as f64);
        let center = |i: usize, j: usize| [(i as f64 + 0.5) * dx, (j as f64 + 0.5) * dy];
        let idx = |i: usize, j: usize| i + nx * j;
        let mut cells = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                cells.push(PolyCell {
                    barycenter: center(i, j),
                    measure: dx * dy,
                });
            }
        }
        let mut faces = Vec::new();
        let add = |left: usize, right: FaceSide, normal: Vec2, measure: f64, a: Vec2, b: Vec2, faces: &mut Vec<PolyFace>, cells: &[PolyCell]| {
            let midpoint = [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])];
            let (theta, point) = match right {
                FaceSide::Cell(r) => segment_face_intersection(cells[left].barycenter, cells[r].barycenter, a, b)
                    .expect("barycenters straddle the face"),
                FaceSide::Boundary(_) => (0.5, midpoint),
            };
            faces.push(PolyFace {
                measure,
                normal,
                left,
                right,
                theta,
                point,
            });
        };
        for j in 0..ny {
            let (y0, y1) = (j as f64 * dy, (j + 1) as f64 * dy);
            for i in 0..=nx {
                let x = i as f64 * dx;
                let (a, b) = ([x, y0], [x, y1]);
                if i == 0 {
                    add(idx(0, j), FaceSide::Boundary(sides[0]), [-1.0, 0.0], dy, a, b, &mut faces, &cells);
                } else if i == nx {
                    add(idx(nx - 1, j), FaceSide::Boundary(sides[1]), [1.0, 0.0], dy, a, b, &mut faces, &cells);
                } else {
                    add(idx(i - 1, j), FaceSide::Cell(idx(i, j)), [1.0, 0.0], dy, a, b, &mut faces, &cells);
                }
            }
        }
        for i in 0..nx {
            let (x0, x1) = (i as f64 * dx, (i + 1) as f64 * dx);
            for j in 0..=ny {
                let y = j as f64 * dy;
                let (a, b) = ([x0, y], [x1, y]);
                if j == 0 {
                    add(idx(i, 0), FaceSide::Boundary(sides[2]), [0.0, -1.0], dx, a, b, &mut faces, &cells);
                } else if j == ny {
                    add(idx(i, ny - 1), FaceSide::Boundary(sides[3]), [0.0, 1.0], dx, a, b, &mut faces, &cells);
                } else {
                    add(idx(i, j - 1), FaceSide::Cell(idx(i, j)), [0.0, 1.0], dx, a, b, &mut faces, &cells);
                }
            }
        }
        Self::new(cells, faces)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line_no, header) = lines.next().ok_or_else(|| format_error(0, "empty mesh"))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let (n_cells, n_faces) = match words.as_slice() {
            ["cells", n, "faces", m] => (
                n.parse::<usize>().map_err(|_| format_error(line_no, "bad cell count"))?,
                m.parse::<usize>().map_err(|_| format_error(line_no, "bad face count"))?,
            ),
            _ => return Err(format_error(line_no, "expected `cells N faces M`")),
        };
        let number = |line: usize, word: &str| -> Result<f64> {
            word.parse::<f64>()
                .map_err(|_| format_error(line, format!("`{word}` is not a number")))
        };
        let mut cells = Vec::with_capacity(n_cells);
        for _ in 0..n_cells {
            let (line, record) = lines.next().ok_or_else(|| format_error(0, "missing cell records"))?;
            let w: Vec<&str> = record.split_whitespace().collect();
            if w.len() != 3 {
                return Err(format_error(line, "cell record needs `bx by measure`"));
            }
            cells.push(PolyCell {
                barycenter: [number(line, w[0])?, number(line, w[1])?],
                measure: number(line, w[2])?,
            });
        }
        let mut faces = Vec::with_capacity(n_faces);
        for _ in 0..n_faces {
            let (line, record) = lines.next().ok_or_else(|| format_error(0, "missing face records"))?;
            let w: Vec<&str> = record.split_whitespace().collect();
            if w.len() != 8 {
                return Err(format_error(line, "face record needs `measure nx ny left right theta yx yy`"));
            }
            let left = w[3]
                .parse::<usize>()
                .map_err(|_| format_error(line, "left cell must be an index"))?;
            let right = match w[4].parse::<usize>() {
                Ok(r) => FaceSide::Cell(r),
                Err(_) => FaceSide::Boundary(
                    BoundaryKind::from_tag(w[4])
                        .ok_or_else(|| format_error(line, format!("unknown boundary tag `{}`", w[4])))?,
                ),
            };
            faces.push(PolyFace {
                measure: number(line, w[0])?,
                normal: [number(line, w[1])?, number(line, w[2])?],
                left,
                right,
                theta: number(line, w[5])?,
                point: [number(line, w[6])?, number(line, w[7])?],
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(format_error(line, "trailing records after the last face"));
        }
        Self::new(cells, faces)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("cells {} faces {}\n", self.cells.len(), self.faces.len());
        for c in &self.cells {
            out += &format!("{:?} {:?} {:?}\n", c.barycenter[0], c.barycenter[1], c.measure);
        }
        for f in &self.faces {
            let right = match f.right {
                FaceSide::Cell(r) => r.to_string(),
                FaceSide::Boundary(kind) => kind.tag().to_string(),
            };
            out += &format!(
                "{:?} {:?} {:?} {} {} {:?} {:?} {:?}\n",
                f.measure, f.normal[0], f.normal[1], f.left, right, f.theta, f.point[0], f.point[1]
            );
        }
        out
    }

    pub fn cells(&self) -> &[PolyCell] {
        &self.cells
    }

    pub fn faces(&self) -> &[PolyFace] {
        &self.faces
    }

    /// Faces on the boundary of cell `k`.
    pub fn faces_of(&self, k: usize) -> &[usize] {
        &self.cell_faces[k]
    }

    /// Outward normal of `face` seen from `cell`, the opposite side, and the
    /// interpolation weight toward the opposite cell.
    pub fn orient(&self, face: usize, cell: usize) -> Result<(Vec2, FaceSide, f64)> {
        let f = self.faces.get(face).ok_or(Error::Topology { face, cell })?;
        if f.left == cell {
            Ok((f.normal, f.right, f.theta))
        } else if f.right == FaceSide::Cell(cell) {
            Ok(([-f.normal[0], -f.normal[1]], FaceSide::Cell(f.left), 1.0 - f.theta))
        } else {
            Err(Error::Topology { face, cell })
        }
    }
}
