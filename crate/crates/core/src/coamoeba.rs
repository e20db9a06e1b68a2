//! Exact coamoeba models of complex tropical hypersurfaces.
//!
//! Everything reduces to one analytic primitive: the coamoeba of the
//! hyperplane `1 + z_1 + … + z_n = 0`, the set of argument vectors `θ` for
//! which `1 + Σ r_j e^{iθ_j} = 0` has a solution with all `r_j > 0`. For
//! `n = 2` this is the classical pair of open triangles; in general it is a
//! positive-spanning condition on the unit vectors `e^{iθ_j}` together with
//! `1`. A curve whose Newton polytope is a simplex with vertex-only support
//! is carried to the hyperplane by a monomial torus map, so its coamoeba is
//! the preimage of the two triangles under `θ ↦ ᵗL·θ + phases` — an integer
//! covering of degree `det ᵗL`, giving `2·det` triangle pieces per
//! fundamental domain.
//!
//! For a polynomial whose dual subdivision is a triangulation with
//! vertex-only cells, the full model is the union of the per-cell pieces
//! plus one codual line per subdivision edge,
//! `arg(a_α) - arg(a_β) + <α-β, x> = π`, carried as the gluing locus (the
//! argument image over the dual tropical edge is exactly that line).

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::{self, EPS_ANGLE, TAU};
use crate::lattice::LatticePoint;
use crate::newton::{self, Cell, RegularSubdivision};
use crate::poly::PolynomialOverSeries;

#[derive(Debug, Error)]
pub enum CoamoebaError {
    #[error("line coamoebas need dimension at least 2, got {0}")]
    UnsupportedDimension(usize),
    #[error("cell support is not the vertex set of a simplex")]
    NotMaximallySparse,
    #[error("codual data needs two distinct exponents")]
    InvalidEdge,
    #[error("the subdivision is not a triangulation")]
    NotTriangulation,
    #[error("cell carries support points besides its vertices")]
    UnsupportedCell,
    #[error("localization sampling needs resolution >= 256, got {0}")]
    IllegalResolution(usize),
    #[error(transparent)]
    Newton(#[from] newton::NewtonError),
    #[error(transparent)]
    Puiseux(#[from] crate::puiseux::PuiseuxError),
}

// ---------------------------------------------------------------------------
// The line coamoeba
// ---------------------------------------------------------------------------

/// Membership in the coamoeba of `1 + z_1 + … + z_n = 0`.
///
/// Open membership asks for a solution with every modulus strictly positive;
/// closed membership accepts the closure. The planar case is decided by the
/// two-triangle description: with `φ_j = θ_j - π` wrapped to `(-π, π]`, the
/// open set is `φ_1 φ_2 < 0` and `|φ_1| + |φ_2| < π`. Higher dimensions
/// reduce to whether `-1` lies in the (interior of the) cone positively
/// spanned by the unit vectors `e^{iθ_j}`.
pub fn line_coamoeba_membership(theta: &[f64], closed: bool) -> Result<bool, CoamoebaError> {
    let n = theta.len();
    if n < 2 {
        return Err(CoamoebaError::UnsupportedDimension(n));
    }
    if n == 2 {
        let p1 = angle::wrap_signed(theta[0] - std::f64::consts::PI);
        let p2 = angle::wrap_signed(theta[1] - std::f64::consts::PI);
        return Ok(if closed {
            let opposite =
                (p1 >= -EPS_ANGLE && p2 <= EPS_ANGLE) || (p1 <= EPS_ANGLE && p2 >= -EPS_ANGLE);
            opposite && p1.abs() + p2.abs() <= std::f64::consts::PI + EPS_ANGLE
        } else {
            p1 * p2 < 0.0 && p1.abs() + p2.abs() < std::f64::consts::PI
        });
    }
    Ok(positive_span_membership(theta, closed))
}

/// Is `-1` a combination `Σ r_j e^{iθ_j}` with all `r_j > 0` (open), or in
/// the closed cone (closed)? The sum set is the interior of the spanned cone
/// plus its boundary rays when every generator lies on them, so the test is
/// a circular-gap computation on the directions.
fn positive_span_membership(theta: &[f64], closed: bool) -> bool {
    let pi = std::f64::consts::PI;
    let mut dirs: Vec<f64> = theta.iter().map(|&t| angle::wrap(t)).collect();
    dirs.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));

    // Largest circular gap between consecutive directions.
    let m = dirs.len();
    let mut gap = 0.0f64;
    let mut arc_start = dirs[0];
    for i in 0..m {
        let next = if i + 1 == m {
            dirs[0] + TAU
        } else {
            dirs[i + 1]
        };
        let g = next - dirs[i];
        if g > gap {
            gap = g;
            arc_start = if i + 1 == m { dirs[0] } else { dirs[i + 1] };
        }
    }

    if gap < pi - EPS_ANGLE {
        // The generators positively span the plane; the sum set is all of it.
        return true;
    }
    // Pointed cone (or halfplane): generators fill the arc
    // [arc_start, arc_start + width] with width = 2π - gap ≤ π.
    let width = TAU - gap;
    let offset = angle::wrap(pi - arc_start);
    let inside_closed = offset <= width + EPS_ANGLE || angle::angle_eq(offset, 0.0);
    if closed {
        return inside_closed;
    }
    let strictly_inside = offset > EPS_ANGLE && offset < width - EPS_ANGLE;
    if strictly_inside {
        return true;
    }
    // Boundary rays belong to the open sum set only when every generator
    // lies on them; with -1 on a boundary ray that forces all θ_j = π.
    inside_closed && dirs.iter().all(|&d| angle::angle_eq(d, pi))
}

/// The two closed triangles whose open interiors make up the planar line
/// coamoeba, with vertices in `[0, 2π]²` (understood mod 2π).
pub fn line_coamoeba_polygons() -> [[[f64; 2]; 3]; 2] {
    let pi = std::f64::consts::PI;
    [
        [[pi, 0.0], [pi, pi], [TAU, pi]],
        [[0.0, pi], [pi, pi], [pi, TAU]],
    ]
}

// ---------------------------------------------------------------------------
// Simplex coamoebas
// ---------------------------------------------------------------------------

/// The coamoeba of a maximally sparse simplex curve: the preimage of the
/// line coamoeba under `θ ↦ matrix_t·θ + phases` on the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexCoamoeba {
    /// Rows are the vertex differences `α_k - α_0`; positive determinant.
    pub matrix_t: Vec<Vec<i64>>,
    /// Argument of the normalized coefficient of each non-base vertex.
    pub phases: Vec<f64>,
    pub det: i64,
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => {
            let mut acc = 0i64;
            for k in 0..n {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != k)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc += sign * m[0][k] * det_i64(&minor);
            }
            acc
        }
    }
}

impl SimplexCoamoeba {
    pub fn dim(&self) -> usize {
        self.matrix_t.len()
    }

    /// `matrix_t · θ + phases`, wrapped.
    pub fn transport(&self, theta: &[f64]) -> Vec<f64> {
        self.matrix_t
            .iter()
            .zip(&self.phases)
            .map(|(row, phase)| {
                let mut acc = *phase;
                for (m, t) in row.iter().zip(theta) {
                    acc += *m as f64 * t;
                }
                angle::wrap(acc)
            })
            .collect()
    }

    pub fn open_membership(&self, theta: &[f64]) -> bool {
        line_coamoeba_membership(&self.transport(theta), false).expect("dim >= 2 by construction")
    }

    pub fn closed_membership(&self, theta: &[f64]) -> bool {
        line_coamoeba_membership(&self.transport(theta), true).expect("dim >= 2 by construction")
    }

    /// The `2·det` preimage triangles of the standard pair in one
    /// fundamental domain, each translated so its barycenter lies in
    /// `[0, 2π)²`. Planar models only.
    pub fn polygons_2d(&self) -> Vec<[[f64; 2]; 3]> {
        assert_eq!(self.dim(), 2, "polygon models are planar");
        let m = &self.matrix_t;
        let det = self.det;
        debug_assert!(det > 0);
        // adj/det is the inverse; residue representatives are the integer
        // points of M·[0,1)², i.e. k with 0 ≤ (adj·k)_i < det.
        let adj = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
        let mut reps: Vec<[i64; 2]> = Vec::with_capacity(det as usize);
        let corner_sum = |f: fn(i64) -> i64| -> (i64, i64) {
            (f(m[0][0]) + f(m[0][1]), f(m[1][0]) + f(m[1][1]))
        };
        let (hi0, hi1) = corner_sum(|x| x.max(0));
        let (lo0, lo1) = corner_sum(|x| x.min(0));
        for k0 in lo0..=hi0 {
            for k1 in lo1..=hi1 {
                let u0 = adj[0][0] * k0 + adj[0][1] * k1;
                let u1 = adj[1][0] * k0 + adj[1][1] * k1;
                if (0..det).contains(&u0) && (0..det).contains(&u1) {
                    reps.push([k0, k1]);
                }
            }
        }
        debug_assert_eq!(reps.len(), det as usize);

        let inv = |x: [f64; 2]| -> [f64; 2] {
            [
                (adj[0][0] as f64 * x[0] + adj[0][1] as f64 * x[1]) / det as f64,
                (adj[1][0] as f64 * x[0] + adj[1][1] as f64 * x[1]) / det as f64,
            ]
        };

        let mut out = Vec::with_capacity(2 * det as usize);
        for tri in line_coamoeba_polygons() {
            for rep in &reps {
                let mut vs = [[0.0f64; 2]; 3];
                for (i, v) in tri.iter().enumerate() {
                    let x = [
                        v[0] - self.phases[0] + TAU * rep[0] as f64,
                        v[1] - self.phases[1] + TAU * rep[1] as f64,
                    ];
                    vs[i] = inv(x);
                }
                // Rigid translation of the whole triangle into the domain.
                let bary = [
                    (vs[0][0] + vs[1][0] + vs[2][0]) / 3.0,
                    (vs[0][1] + vs[1][1] + vs[2][1]) / 3.0,
                ];
                let shift = [
                    -(bary[0].div_euclid(TAU)) * TAU,
                    -(bary[1].div_euclid(TAU)) * TAU,
                ];
                for v in vs.iter_mut() {
                    v[0] += shift[0];
                    v[1] += shift[1];
                }
                out.push(vs);
            }
        }
        out
    }
}

/// Normalize a maximally sparse simplex polynomial `f` restricted to `cell`
/// into `1 + Σ a_k z^{L e_k}` by dividing by the lexicographically smallest
/// vertex monomial, and record the transported coamoeba data. A negative
/// orientation is fixed by swapping the last two vertex columns.
pub fn simplex_coamoeba(
    f: &PolynomialOverSeries,
    cell: &Cell,
) -> Result<SimplexCoamoeba, CoamoebaError> {
    let n = f.dim();
    let truncated = newton::truncate(f, cell)?;
    let mut vertices = cell.vertices.clone();
    vertices.sort();
    if vertices.len() != n + 1 {
        return Err(CoamoebaError::NotMaximallySparse);
    }
    if truncated.support() != vertices {
        return Err(CoamoebaError::NotMaximallySparse);
    }

    let base = vertices[0].clone();
    let base_arg = f
        .coefficient(&base)
        .expect("base vertex is in the support")
        .arg_map()?;
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n);
    let mut phases: Vec<f64> = Vec::with_capacity(n);
    for vertex in &vertices[1..] {
        let delta = vertex.sub(&base).to_i64s().expect("desk-scale exponents");
        rows.push(delta);
        let arg = f
            .coefficient(vertex)
            .expect("cell vertex is in the support")
            .arg_map()?;
        phases.push(angle::wrap(arg - base_arg));
    }
    let mut det = det_i64(&rows);
    debug_assert!(det != 0, "simplex cells have independent edge vectors");
    if det < 0 {
        rows.swap(n - 2, n - 1);
        phases.swap(n - 2, n - 1);
        det = -det;
    }
    Ok(SimplexCoamoeba {
        matrix_t: rows,
        phases,
        det,
    })
}

// ---------------------------------------------------------------------------
// Codual hyperplanes
// ---------------------------------------------------------------------------

/// The torus hyperplane `<normal, x> ≡ offset (mod 2π)` attached to a
/// subdivision edge, where `normal = α - β` and
/// `offset = π - arg(a_α) + arg(a_β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CodualHyperplane {
    pub normal: LatticePoint,
    pub offset: f64,
    pub edge: (LatticePoint, LatticePoint),
    pub external: bool,
}

impl CodualHyperplane {
    /// Distance of `<normal, x> - offset` to `0` on the circle.
    pub fn residue(&self, x: &[f64]) -> f64 {
        let mut acc = -self.offset;
        for (c, xi) in self.normal.coords().iter().zip(x) {
            acc += c.to_f64().expect("desk-scale normal") * xi;
        }
        angle::wrap_signed(acc).abs()
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.residue(x) <= tol
    }
}

/// The codual hyperplane of one edge `(α, β)` of the support of `f`.
pub fn codual_hyperplane(
    f: &PolynomialOverSeries,
    alpha: &LatticePoint,
    beta: &LatticePoint,
    external: bool,
) -> Result<CodualHyperplane, CoamoebaError> {
    if alpha == beta {
        return Err(CoamoebaError::InvalidEdge);
    }
    let arg_alpha = f
        .coefficient(alpha)
        .ok_or(CoamoebaError::InvalidEdge)?
        .arg_map()?;
    let arg_beta = f
        .coefficient(beta)
        .ok_or(CoamoebaError::InvalidEdge)?
        .arg_map()?;
    Ok(CodualHyperplane {
        normal: alpha.sub(beta),
        offset: angle::wrap(std::f64::consts::PI - arg_alpha + arg_beta),
        edge: (alpha.clone(), beta.clone()),
        external,
    })
}

/// One codual hyperplane per edge of the subdivision, in edge order.
pub fn codual_hyperplanes(
    f: &PolynomialOverSeries,
    sub: &RegularSubdivision,
) -> Result<Vec<CodualHyperplane>, CoamoebaError> {
    sub.edges
        .iter()
        .map(|e| codual_hyperplane(f, &e.a, &e.b, e.external))
        .collect()
}

// ---------------------------------------------------------------------------
// Glued models
// ---------------------------------------------------------------------------

/// Exact model of the coamoeba of a complex tropical curve: one simplex
/// piece per triangulation cell plus all codual lines. Open membership is
/// the union of the open pieces; the closed set adds the lines.
#[derive(Clone, Debug, PartialEq)]
pub struct CoamoebaModel {
    pub dimension: usize,
    pub pieces: Vec<SimplexCoamoeba>,
    pub codual_lines: Vec<CodualHyperplane>,
}

impl CoamoebaModel {
    pub fn open_membership(&self, theta: &[f64]) -> bool {
        self.pieces.iter().any(|p| p.open_membership(theta))
    }

    /// Closure membership: closed pieces or any codual line within `line_tol`.
    pub fn closed_membership(&self, theta: &[f64], line_tol: f64) -> bool {
        self.pieces.iter().any(|p| p.closed_membership(theta))
            || self
                .codual_lines
                .iter()
                .any(|l| l.contains(theta, line_tol))
    }

    /// Total triangle count over all pieces.
    pub fn triangle_count(&self) -> usize {
        self.pieces.iter().map(|p| 2 * p.det as usize).sum()
    }
}

/// Build the glued model of `f` over its dual subdivision. The subdivision
/// must be a (vertex-only) triangulation; cells carrying extra support
/// points are rejected.
pub fn glue_coamoeba(
    f: &PolynomialOverSeries,
    sub: &RegularSubdivision,
) -> Result<CoamoebaModel, CoamoebaError> {
    if f.dim() != 2 || sub.dim != 2 {
        return Err(CoamoebaError::UnsupportedDimension(f.dim()));
    }
    if sub.cell_dim != 2 || !sub.is_triangulation {
        return Err(CoamoebaError::NotTriangulation);
    }
    let mut pieces = Vec::with_capacity(sub.cells.len());
    for cell in &sub.cells {
        let piece = simplex_coamoeba(f, cell).map_err(|e| match e {
            CoamoebaError::NotMaximallySparse => CoamoebaError::UnsupportedCell,
            other => other,
        })?;
        pieces.push(piece);
    }
    Ok(CoamoebaModel {
        dimension: 2,
        pieces,
        codual_lines: codual_hyperplanes(f, sub)?,
    })
}

// ---------------------------------------------------------------------------
// Localization classification along a codual line
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LocalizationLabel {
    /// A run of samples with the open coamoeba on both sides of the line:
    /// the line is engulfed in two-dimensional material there.
    FullDim,
    /// An isolated stretch where neither side meets the open coamoeba; such
    /// points sit at intersections with other codual lines.
    Discrete,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LocalizationComponent {
    pub label: LocalizationLabel,
    /// Which parallel branch of the (possibly non-primitive) line.
    pub branch: usize,
    /// Arc-length parameters along the branch geodesic, `start <= end`
    /// (`end` may exceed the period for runs crossing the seam).
    pub start: f64,
    pub end: f64,
    /// A representative point of the component.
    pub witness: [f64; 2],
    /// Within two sample steps of an intersection with another codual line.
    pub near_intersection: bool,
}

/// Raster classification of `H ∩ coamoeba` along the codual line
/// `model.codual_lines[line_index]`.
///
/// Each branch geodesic is sampled at `resolution` points; a sample is
/// two-sided when both normal neighbours at distance `h` (two sample steps)
/// lie in the open membership set, one-sided when exactly one does, and
/// inactive otherwise. Maximal two-sided runs are reported as full-
/// dimensional components; maximal inactive runs as discrete ones (the line
/// itself always lies in the closed model, and inactive stretches collapse
/// to codual-line intersections as the resolution grows). One-sided
/// stretches are ordinary coamoeba boundary and are not components.
pub fn classify_localization(
    model: &CoamoebaModel,
    line_index: usize,
    resolution: usize,
) -> Result<Vec<LocalizationComponent>, CoamoebaError> {
    if resolution < 256 {
        return Err(CoamoebaError::IllegalResolution(resolution));
    }
    let line = &model.codual_lines[line_index];
    let normal = &line.normal;
    let content = normal.content().to_i64().expect("desk-scale normal");
    let prim = normal.primitive();
    let p: Vec<f64> = prim
        .coords()
        .iter()
        .map(|c| c.to_f64().expect("desk-scale normal"))
        .collect();
    let p_norm2 = p[0] * p[0] + p[1] * p[1];
    let p_norm = p_norm2.sqrt();
    let dir = [-p[1] / p_norm, p[0] / p_norm];
    let period = TAU * p_norm;
    let step = period / resolution as f64;
    let h = 2.0 * step;

    let mut components = Vec::new();
    for branch in 0..content as usize {
        let target = (line.offset + TAU * branch as f64) / content as f64;
        let base = [target * p[0] / p_norm2, target * p[1] / p_norm2];
        let at = |s: f64| -> [f64; 2] {
            [
                angle::wrap(base[0] + s * dir[0]),
                angle::wrap(base[1] + s * dir[1]),
            ]
        };

        #[derive(Clone, Copy, PartialEq)]
        enum State {
            TwoSided,
            OneSided,
            Inactive,
        }
        let states: Vec<State> = (0..resolution)
            .map(|i| {
                let x = at(i as f64 * step);
                let plus = [x[0] + h * p[0] / p_norm, x[1] + h * p[1] / p_norm];
                let minus = [x[0] - h * p[0] / p_norm, x[1] - h * p[1] / p_norm];
                let a = model.open_membership(&plus);
                let b = model.open_membership(&minus);
                match (a, b) {
                    (true, true) => State::TwoSided,
                    (false, false) => State::Inactive,
                    _ => State::OneSided,
                }
            })
            .collect();

        // Intersections with the other codual lines, as parameters in
        // [0, period).
        let mut crossings: Vec<f64> = Vec::new();
        for (j, other) in model.codual_lines.iter().enumerate() {
            if j == line_index {
                continue;
            }
            let n2: Vec<f64> = other
                .normal
                .coords()
                .iter()
                .map(|c| c.to_f64().expect("desk-scale normal"))
                .collect();
            let slope = n2[0] * dir[0] + n2[1] * dir[1];
            if slope.abs() < 1e-12 {
                continue;
            }
            let at0 = n2[0] * base[0] + n2[1] * base[1];
            // Solve at0 + s·slope ≡ other.offset (mod 2π) for s ∈ [0, period).
            let count = (period * slope.abs() / TAU).round() as i64 + 2;
            for m in -count..=count {
                let s = (other.offset - at0 + TAU * m as f64) / slope;
                if (0.0..period).contains(&s) {
                    crossings.push(s);
                }
            }
        }

        // Maximal cyclic runs of equal state: (state, start index, length).
        let mut runs: Vec<(State, usize, usize)> = Vec::new();
        if states.iter().all(|s| *s == states[0]) {
            runs.push((states[0], 0, resolution));
        } else {
            let mut origin = 0usize;
            while states[(origin + resolution - 1) % resolution] == states[origin] {
                origin += 1;
            }
            let mut covered = 0usize;
            let mut i = origin;
            while covered < resolution {
                let state = states[i % resolution];
                let mut len = 1usize;
                while len < resolution - covered && states[(i + len) % resolution] == state {
                    len += 1;
                }
                runs.push((state, i % resolution, len));
                i += len;
                covered += len;
            }
        }
        for (state, start_idx, len) in runs {
            if state == State::OneSided {
                continue;
            }
            push_component(
                &mut components,
                state == State::TwoSided,
                branch,
                start_idx as f64 * step,
                (start_idx + len - 1) as f64 * step,
                &at,
                &crossings,
                step,
                period,
            );
        }
    }
    Ok(components)
}

#[allow(clippy::too_many_arguments)]
fn push_component(
    components: &mut Vec<LocalizationComponent>,
    two_sided: bool,
    branch: usize,
    start: f64,
    end: f64,
    at: &impl Fn(f64) -> [f64; 2],
    crossings: &[f64],
    step: f64,
    period: f64,
) {
    let circ = |a: f64, b: f64| -> f64 {
        let d = (a - b).rem_euclid(period);
        d.min(period - d)
    };
    let near = crossings.iter().any(|&s| {
        circ(s, start.rem_euclid(period)) <= 2.0 * step
            || circ(s, end.rem_euclid(period)) <= 2.0 * step
            || {
                // Inside the run.
                let len = end - start;
                (s - start).rem_euclid(period) <= len
            }
    });
    components.push(LocalizationComponent {
        label: if two_sided {
            LocalizationLabel::FullDim
        } else {
            LocalizationLabel::Discrete
        },
        branch,
        start,
        end,
        witness: at((start + end) / 2.0),
        near_intersection: near,
    });
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceDoc {
    pub matrix: Vec<Vec<i64>>,
    pub phases: Vec<f64>,
    pub det: i64,
    pub triangles: Vec<[[f64; 2]; 3]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodualLineDoc {
    pub normal: Vec<i64>,
    pub offset: f64,
    pub edge: (Vec<i64>, Vec<i64>),
    pub external: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    pub dimension: usize,
    pub pieces: Vec<PieceDoc>,
    pub codual_lines: Vec<CodualLineDoc>,
}

impl ModelDoc {
    pub fn from_model(model: &CoamoebaModel) -> Self {
        ModelDoc {
            dimension: model.dimension,
            pieces: model
                .pieces
                .iter()
                .map(|p| PieceDoc {
                    matrix: p.matrix_t.clone(),
                    phases: p.phases.clone(),
                    det: p.det,
                    triangles: if p.dim() == 2 {
                        p.polygons_2d()
                    } else {
                        Vec::new()
                    },
                })
                .collect(),
            codual_lines: model
                .codual_lines
                .iter()
                .map(|l| CodualLineDoc {
                    normal: l.normal.to_i64s().expect("desk-scale normal"),
                    offset: l.offset,
                    edge: (
                        l.edge.0.to_i64s().expect("desk-scale exponent"),
                        l.edge.1.to_i64s().expect("desk-scale exponent"),
                    ),
                    external: l.external,
                })
                .collect(),
        }
    }

    pub fn to_model(&self) -> CoamoebaModel {
        CoamoebaModel {
            dimension: self.dimension,
            pieces: self
                .pieces
                .iter()
                .map(|p| SimplexCoamoeba {
                    matrix_t: p.matrix.clone(),
                    phases: p.phases.clone(),
                    det: p.det,
                })
                .collect(),
            codual_lines: self
                .codual_lines
                .iter()
                .map(|l| CodualHyperplane {
                    normal: LatticePoint::from_i64s(&l.normal),
                    offset: l.offset,
                    edge: (
                        LatticePoint::from_i64s(&l.edge.0),
                        LatticePoint::from_i64s(&l.edge.1),
                    ),
                    external: l.external,
                })
                .collect(),
        }
    }
}

// Exact triangle area in units where the result is `f64`.
pub fn triangle_area(t: &[[f64; 2]; 3]) -> f64 {
    0.5 * ((t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]))
        .abs()
}

/// Point-in-closed-triangle test for the polygon/predicate cross-checks;
/// the triangle may live anywhere in the plane (covering-map preimages of a
/// near-singular transport are long slivers spanning several fundamental
/// domains), membership is understood mod 2π. Candidate translates of the
/// point are read off the triangle's bounding box.
pub fn triangle_contains_mod(tri: &[[f64; 2]; 3], theta: &[f64; 2], tol: f64) -> bool {
    let pad = tol.abs() + 1e-9;
    let range = |axis: usize| -> std::ops::RangeInclusive<i64> {
        let min = tri.iter().map(|v| v[axis]).fold(f64::INFINITY, f64::min);
        let max = tri
            .iter()
            .map(|v| v[axis])
            .fold(f64::NEG_INFINITY, f64::max);
        let lo = ((min - pad - theta[axis]) / TAU).ceil() as i64;
        let hi = ((max + pad - theta[axis]) / TAU).floor() as i64;
        lo..=hi
    };
    for dx in range(0) {
        for dy in range(1) {
            let p = [theta[0] + TAU * dx as f64, theta[1] + TAU * dy as f64];
            let mut pos = true;
            let mut neg = true;
            for i in 0..3 {
                let a = tri[i];
                let b = tri[(i + 1) % 3];
                let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                if cross < -tol {
                    pos = false;
                }
                if cross > tol {
                    neg = false;
                }
            }
            if pos || neg {
                return true;
            }
        }
    }
    false
}
