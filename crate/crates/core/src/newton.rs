//! Newton polytopes, lifted point sets, and regular subdivisions.
//!
//! The subdivision of a support set `A ⊂ Z^n` under a lift `ν : A → Q` is cut
//! out by the lower hull of the lifted points `(α, ν(α))`: a cell is the set
//! of support points lying on one lower facet `y = <x,v> + r`, and every
//! other lifted point sits strictly above that plane. Everything here is
//! exact big-rational arithmetic; facets are found by brute-force enumeration
//! of 3-subsets, which is the right trade at desk scale (|A| ≤ 64).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{format_rational, parse_rational, LatticePoint, RatVec};
use crate::poly::PolynomialOverSeries;

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("empty support")]
    EmptySupport,
    #[error("duplicate support point {0}")]
    DuplicatePoint(LatticePoint),
    #[error("truncation has empty support")]
    EmptyTruncation,
    #[error("mixed dimensions in point set")]
    DimensionMismatch,
}

// ---------------------------------------------------------------------------
// Convex hulls
// ---------------------------------------------------------------------------

/// Newton polytope: a support set together with its extreme points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    /// Sorted support.
    pub support: Vec<LatticePoint>,
    /// Extreme points of the convex hull, sorted lexicographically.
    pub vertices: Vec<LatticePoint>,
}

/// Twice the signed area of the triangle `o, a, b`.
fn cross2(o: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> BigInt {
    let ux = a.coord(0) - o.coord(0);
    let uy = a.coord(1) - o.coord(1);
    let vx = b.coord(0) - o.coord(0);
    let vy = b.coord(1) - o.coord(1);
    &ux * &vy - &uy * &vx
}

/// Counterclockwise hull cycle of a 2-dimensional point set (monotone chain,
/// exact). Collinear boundary points are dropped; a collinear input yields
/// its two endpoints, a single point yields itself.
pub fn hull_cycle_2d(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut pts: Vec<LatticePoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<LatticePoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= BigInt::zero()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<LatticePoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= BigInt::zero()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    if upper.len() + lower.len() < 3 {
        // Collinear set: keep the two endpoints.
        let mut ends = vec![pts[0].clone(), pts[n - 1].clone()];
        ends.dedup();
        return ends;
    }
    lower.extend(upper);
    lower
}

/// Extreme points of the convex hull of `support`, dimensions 1 to 3.
pub fn convex_hull(support: &[LatticePoint]) -> Result<NewtonPolytope, NewtonError> {
    if support.is_empty() {
        return Err(NewtonError::EmptySupport);
    }
    let n = support[0].dim();
    if support.iter().any(|p| p.dim() != n) {
        return Err(NewtonError::DimensionMismatch);
    }
    let mut sorted: Vec<LatticePoint> = support.to_vec();
    sorted.sort();
    sorted.dedup();

    let mut vertices: Vec<LatticePoint> = match n {
        1 => {
            let mut v = vec![sorted[0].clone(), sorted[sorted.len() - 1].clone()];
            v.dedup();
            v
        }
        2 => hull_cycle_2d(&sorted),
        3 => sorted
            .iter()
            .filter(|p| {
                let others: Vec<&LatticePoint> = sorted.iter().filter(|q| q != p).collect();
                !in_convex_hull(p, &others)
            })
            .cloned()
            .collect(),
        d => return Err(NewtonError::UnsupportedDimension(d)),
    };
    vertices.sort();
    Ok(NewtonPolytope {
        support: sorted,
        vertices,
    })
}

/// Exact membership of `p` in the convex hull of `others`, any dimension.
/// Phase-1 simplex over the rationals on `{λ ≥ 0 : Σλ_i q_i = p, Σλ_i = 1}`.
fn in_convex_hull(p: &LatticePoint, others: &[&LatticePoint]) -> bool {
    if others.is_empty() {
        return false;
    }
    let d = p.dim();
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(d + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(d + 1);
    for i in 0..d {
        a.push(
            others
                .iter()
                .map(|q| BigRational::from(q.coord(i).clone()))
                .collect(),
        );
        b.push(BigRational::from(p.coord(i).clone()));
    }
    a.push(vec![BigRational::from(BigInt::from(1)); others.len()]);
    b.push(BigRational::from(BigInt::from(1)));
    lp_feasible(a, b)
}

/// Phase-1 simplex with Bland's rule: is `{x ≥ 0 : Ax = b}` nonempty?
fn lp_feasible(a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let m = b.len();
    let n = a[0].len();
    // Tableau [A | I | b], rows flipped so b ≥ 0; artificial basis.
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = a[i].clone();
        for j in 0..m {
            row.push(if i == j {
                BigRational::from(BigInt::from(1))
            } else {
                BigRational::zero()
            });
        }
        if b[i] < BigRational::zero() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b[i] = -b[i].clone();
        }
        row.push(b[i].clone());
        t.push(row);
    }
    let cols = n + m;
    // Reduced costs for minimizing the artificial sum: r_j = c_j - Σ_i t[i][j].
    let mut cost: Vec<BigRational> = (0..=cols)
        .map(|j| {
            let col_sum: BigRational = t.iter().map(|row| row[j].clone()).sum();
            let c_j = if (n..cols).contains(&j) {
                BigRational::from(BigInt::from(1))
            } else {
                BigRational::zero()
            };
            c_j - col_sum
        })
        .collect();
    let mut basis: Vec<usize> = (n..cols).collect();

    loop {
        let Some(enter) = (0..cols).find(|&j| cost[j] < BigRational::zero()) else {
            // Optimal; feasible iff all artificials are driven to zero.
            return -cost[cols].clone() == BigRational::zero();
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..m {
            if t[i][enter] > BigRational::zero() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()]),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            // Unbounded phase-1 objective cannot happen; treat as infeasible.
            return false;
        };
        let pivot = t[li][enter].clone();
        for x in t[li].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..m {
            if i != li && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=cols {
                    let delta = &f * &t[li][j];
                    t[i][j] = &t[i][j] - delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..=cols {
                let delta = &f * &t[li][j];
                cost[j] = &cost[j] - delta;
            }
        }
        basis[li] = enter;
    }
}

// ---------------------------------------------------------------------------
// Lifted point sets and the regular subdivision
// ---------------------------------------------------------------------------

/// A support set with one exact rational height per point.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedPointSet {
    entries: Vec<(LatticePoint, BigRational)>,
}

impl LiftedPointSet {
    pub fn new(entries: Vec<(LatticePoint, BigRational)>) -> Result<Self, NewtonError> {
        if entries.is_empty() {
            return Err(NewtonError::EmptySupport);
        }
        let dim = entries[0].0.dim();
        if entries.iter().any(|(p, _)| p.dim() != dim) {
            return Err(NewtonError::DimensionMismatch);
        }
        let mut entries = entries;
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(NewtonError::DuplicatePoint(w[0].0.clone()));
            }
        }
        Ok(LiftedPointSet { entries })
    }

    pub fn from_i64s(entries: &[(&[i64], (i64, i64))]) -> Self {
        LiftedPointSet::new(
            entries
                .iter()
                .map(|(p, (n, d))| {
                    (
                        LatticePoint::from_i64s(p),
                        BigRational::new((*n).into(), (*d).into()),
                    )
                })
                .collect(),
        )
        .expect("literal lift")
    }

    pub fn entries(&self) -> &[(LatticePoint, BigRational)] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries[0].0.dim()
    }

    pub fn height(&self, p: &LatticePoint) -> Option<&BigRational> {
        self.entries
            .binary_search_by(|(q, _)| q.cmp(p))
            .ok()
            .map(|i| &self.entries[i].1)
    }
}

/// One cell of a regular subdivision, with its exact supporting affine data:
/// the lift equals `<α, normal> + offset` exactly on the cell's points and is
/// strictly larger elsewhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    /// Extreme points, in counterclockwise order for 2-cells.
    pub vertices: Vec<LatticePoint>,
    /// All support points lying on the cell (sorted); ⊇ vertices.
    pub points: Vec<LatticePoint>,
    pub normal: RatVec,
    pub offset: BigRational,
}

impl Cell {
    /// Geometric membership of a lattice point in the closed cell.
    pub fn contains(&self, p: &LatticePoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => *p == self.vertices[0],
            2 => point_on_segment(p, &self.vertices[0], &self.vertices[1]),
            _ => {
                let k = self.vertices.len();
                (0..k).all(|i| {
                    cross2(&self.vertices[i], &self.vertices[(i + 1) % k], p) >= BigInt::zero()
                })
            }
        }
    }
}

fn point_on_segment(p: &LatticePoint, a: &LatticePoint, b: &LatticePoint) -> bool {
    if p.dim() >= 2 && cross2(a, b, p) != BigInt::zero() {
        return false;
    }
    (0..p.dim()).all(|i| {
        let (lo, hi) = if a.coord(i) <= b.coord(i) {
            (a.coord(i), b.coord(i))
        } else {
            (b.coord(i), a.coord(i))
        };
        lo <= p.coord(i) && p.coord(i) <= hi
    })
}

/// An edge of the subdivision complex with the cells it bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub a: LatticePoint,
    pub b: LatticePoint,
    /// True when the edge lies on the boundary of the Newton polytope.
    pub external: bool,
    pub cells: Vec<usize>,
}

impl SubdivisionEdge {
    /// Number of lattice points on the edge minus one.
    pub fn lattice_length(&self) -> BigInt {
        self.a.sub(&self.b).content()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularSubdivision {
    pub dim: usize,
    /// Dimension of the top cells (2 generically, 1 or 0 for degenerate
    /// supports).
    pub cell_dim: usize,
    /// Sorted support.
    pub support: Vec<LatticePoint>,
    pub cells: Vec<Cell>,
    pub edges: Vec<SubdivisionEdge>,
    pub is_triangulation: bool,
}

impl RegularSubdivision {
    pub fn polytope(&self) -> NewtonPolytope {
        convex_hull(&self.support).expect("support validated at construction")
    }
}

/// Is every top-dimensional cell a simplex carrying no support points besides
/// its vertices? Degenerate subdivisions check their segment cells the same
/// way.
pub fn is_triangulation(sub: &RegularSubdivision) -> bool {
    sub.cells.iter().all(|c| {
        c.vertices.len() == sub.cell_dim + 1
            && c.points == {
                let mut v = c.vertices.clone();
                v.sort();
                v
            }
    })
}

/// The regular subdivision induced by the lower hull of the lifted points.
pub fn lower_hull_subdivision(lift: &LiftedPointSet) -> Result<RegularSubdivision, NewtonError> {
    match lift.dim() {
        1 => one_dimensional_subdivision(lift),
        2 => {
            let support: Vec<LatticePoint> =
                lift.entries().iter().map(|(p, _)| p.clone()).collect();
            if support.len() == 1 {
                return Ok(point_subdivision(lift));
            }
            let collinear = support.len() >= 2 && {
                let a = &support[0];
                let b = &support[1];
                support
                    .iter()
                    .skip(2)
                    .all(|p| cross2(a, b, p) == BigInt::zero())
            };
            if support.len() == 2 || collinear {
                one_dimensional_subdivision(lift)
            } else {
                two_dimensional_subdivision(lift)
            }
        }
        d => Err(NewtonError::UnsupportedDimension(d)),
    }
}

fn point_subdivision(lift: &LiftedPointSet) -> RegularSubdivision {
    let (p, h) = lift.entries()[0].clone();
    let dim = p.dim();
    RegularSubdivision {
        dim,
        cell_dim: 0,
        support: vec![p.clone()],
        cells: vec![Cell {
            vertices: vec![p.clone()],
            points: vec![p],
            normal: vec![BigRational::zero(); dim],
            offset: h,
        }],
        edges: Vec::new(),
        is_triangulation: true,
    }
}

fn two_dimensional_subdivision(lift: &LiftedPointSet) -> Result<RegularSubdivision, NewtonError> {
    let entries = lift.entries();
    let n = entries.len();
    let mut planes: BTreeMap<(RatVec, BigRational), Vec<LatticePoint>> = BTreeMap::new();

    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (pi, hi) = &entries[i];
                let (pj, hj) = &entries[j];
                let (pk, hk) = &entries[k];
                let det = cross2(pi, pj, pk);
                if det.is_zero() {
                    continue;
                }
                // Solve <x, v> + r = h through the three lifted points.
                let ax = BigRational::from(pj.coord(0) - pi.coord(0));
                let ay = BigRational::from(pj.coord(1) - pi.coord(1));
                let bx = BigRational::from(pk.coord(0) - pi.coord(0));
                let by = BigRational::from(pk.coord(1) - pi.coord(1));
                let dh1 = hj - hi;
                let dh2 = hk - hi;
                let det_r = BigRational::from(det.clone());
                let v0 = (&dh1 * &by - &dh2 * &ay) / &det_r;
                let v1 = (&ax * &dh2 - &bx * &dh1) / &det_r;
                let v = vec![v0, v1];
                let r = hi - pi.dot_rat(&v);

                let lower = entries.iter().all(|(q, hq)| *hq >= q.dot_rat(&v) + &r);
                if !lower {
                    continue;
                }
                planes.entry((v.clone(), r.clone())).or_insert_with(|| {
                    entries
                        .iter()
                        .filter(|(q, hq)| *hq == q.dot_rat(&v) + &r)
                        .map(|(q, _)| q.clone())
                        .collect()
                });
            }
        }
    }

    let mut cells: Vec<Cell> = planes
        .into_iter()
        .map(|((normal, offset), points)| {
            let vertices = hull_cycle_2d(&points);
            let mut points = points;
            points.sort();
            Cell {
                vertices,
                points,
                normal,
                offset,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.points.cmp(&b.points));

    let support: Vec<LatticePoint> = entries.iter().map(|(p, _)| p.clone()).collect();
    let hull = hull_cycle_2d(&support);
    let edges = collect_edges(&cells, &hull);
    let mut sub = RegularSubdivision {
        dim: 2,
        cell_dim: 2,
        support,
        cells,
        edges,
        is_triangulation: false,
    };
    sub.is_triangulation = is_triangulation(&sub);
    Ok(sub)
}

fn collect_edges(cells: &[Cell], hull: &[LatticePoint]) -> Vec<SubdivisionEdge> {
    let mut map: BTreeMap<(LatticePoint, LatticePoint), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let k = cell.vertices.len();
        if k < 2 {
            continue;
        }
        let sides = if k == 2 { 1 } else { k };
        for s in 0..sides {
            let a = &cell.vertices[s];
            let b = &cell.vertices[(s + 1) % k];
            let key = if a <= b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            let entry = map.entry(key).or_default();
            if !entry.contains(&ci) {
                entry.push(ci);
            }
        }
    }
    map.into_iter()
        .map(|((a, b), cells)| {
            let external = on_hull_boundary(&a, &b, hull);
            SubdivisionEdge {
                a,
                b,
                external,
                cells,
            }
        })
        .collect()
}

fn on_hull_boundary(a: &LatticePoint, b: &LatticePoint, hull: &[LatticePoint]) -> bool {
    let k = hull.len();
    if k < 2 {
        return false;
    }
    let sides = if k == 2 { 1 } else { k };
    (0..sides).any(|s| {
        let ha = &hull[s];
        let hb = &hull[(s + 1) % k];
        point_on_segment(a, ha, hb) && point_on_segment(b, ha, hb)
    })
}

/// Lower hull of a collinear (or genuinely 1-dimensional) lifted set. Cells
/// are the segments of linearity; the supporting data is the minimum-norm
/// affine form agreeing with the lift on each segment.
fn one_dimensional_subdivision(lift: &LiftedPointSet) -> Result<RegularSubdivision, NewtonError> {
    let entries = lift.entries();
    if entries.len() == 1 {
        return Ok(point_subdivision(lift));
    }
    let dim = lift.dim();
    let base = entries[0].0.clone();
    let dir = entries[entries.len() - 1].0.sub(&base).primitive();

    // Integer parameter of each point along the line.
    let mut params: Vec<(BigInt, &LatticePoint, &BigRational)> = entries
        .iter()
        .map(|(p, h)| {
            let d = p.sub(&base);
            // d = k * dir; read k off the first nonzero coordinate of dir.
            let i = (0..dim)
                .find(|&i| !dir.coord(i).is_zero())
                .expect("primitive direction is nonzero");
            (d.coord(i) / dir.coord(i), p, h)
        })
        .collect();
    params.sort_by(|a, b| a.0.cmp(&b.0));

    // Lower hull of (k, h) by monotone chain on exact rationals.
    let mut chain: Vec<usize> = Vec::new();
    for idx in 0..params.len() {
        while chain.len() >= 2 {
            let (k1, _, h1) = &params[chain[chain.len() - 2]];
            let (k2, _, h2) = &params[chain[chain.len() - 1]];
            let (k3, _, h3) = &params[idx];
            // Keep strict convexity: drop the middle point when on or above
            // the segment.
            let lhs = (*h2 - *h1) * BigRational::from(k3 - k1);
            let rhs = (*h3 - *h1) * BigRational::from(k2 - k1);
            if lhs >= rhs {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(idx);
    }

    let dir_norm2 = BigRational::from(dir.dot_int(&dir));
    let mut cells: Vec<Cell> = Vec::new();
    for w in chain.windows(2) {
        let (ka, pa, ha) = &params[w[0]];
        let (kb, pb, hb) = &params[w[1]];
        let slope = (*hb - *ha) / BigRational::from(kb - ka);
        let normal: RatVec = dir
            .coords()
            .iter()
            .map(|c| &slope * BigRational::from(c.clone()) / &dir_norm2)
            .collect();
        let offset = *ha - pa.dot_rat(&normal);
        let mut points: Vec<LatticePoint> = params
            .iter()
            .filter(|(k, _, h)| {
                k >= ka && k <= kb && {
                    let expected = &slope * BigRational::from(k - ka) + *ha;
                    **h == expected
                }
            })
            .map(|(_, p, _)| (*p).clone())
            .collect();
        points.sort();
        cells.push(Cell {
            vertices: vec![(*pa).clone(), (*pb).clone()],
            points,
            normal,
            offset,
        });
    }
    cells.sort_by(|a, b| a.points.cmp(&b.points));

    let support: Vec<LatticePoint> = entries.iter().map(|(p, _)| p.clone()).collect();
    let edges = cells
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let (a, b) = if c.vertices[0] <= c.vertices[1] {
                (c.vertices[0].clone(), c.vertices[1].clone())
            } else {
                (c.vertices[1].clone(), c.vertices[0].clone())
            };
            SubdivisionEdge {
                a,
                b,
                external: false,
                cells: vec![ci],
            }
        })
        .collect();
    let mut sub = RegularSubdivision {
        dim,
        cell_dim: 1,
        support,
        cells,
        edges,
        is_triangulation: false,
    };
    sub.is_triangulation = is_triangulation(&sub);
    Ok(sub)
}

/// Deterministically perturb heights (by less than `2^-20`, exact rationals)
/// until the subdivision is a triangulation. The input is returned unchanged
/// when it already triangulates.
pub fn perturb_to_triangulation(
    lift: &LiftedPointSet,
    seed: u64,
) -> Result<LiftedPointSet, NewtonError> {
    let sub = lower_hull_subdivision(lift)?;
    if sub.is_triangulation {
        return Ok(lift.clone());
    }
    let denom = BigInt::from(1u128 << 60);
    for round in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(round);
        let entries = lift
            .entries()
            .iter()
            .map(|(p, h)| {
                let jitter = BigRational::new(BigInt::from(rng.next_u64() >> 24), denom.clone());
                (p.clone(), h + jitter)
            })
            .collect();
        let candidate = LiftedPointSet::new(entries)?;
        if lower_hull_subdivision(&candidate)?.is_triangulation {
            return Ok(candidate);
        }
    }
    unreachable!("generic perturbation triangulates within the retry budget")
}

/// Keep exactly the terms whose exponent lies in the (closed) cell.
pub fn truncate(
    poly: &PolynomialOverSeries,
    cell: &Cell,
) -> Result<PolynomialOverSeries, NewtonError> {
    let kept: Vec<_> = poly
        .terms()
        .iter()
        .filter(|(alpha, _)| cell.contains(alpha))
        .map(|(alpha, a)| (alpha.clone(), a.clone()))
        .collect();
    if kept.is_empty() {
        return Err(NewtonError::EmptyTruncation);
    }
    Ok(PolynomialOverSeries::new(poly.dim(), kept).expect("subset of a valid polynomial"))
}

/// Exact doubled area of a counterclockwise polygon.
pub fn polygon_area2(cycle: &[LatticePoint]) -> BigInt {
    let k = cycle.len();
    if k < 3 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for i in 0..k {
        let a = &cycle[i];
        let b = &cycle[(i + 1) % k];
        acc += a.coord(0) * b.coord(1) - b.coord(0) * a.coord(1);
    }
    acc
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDoc {
    pub vertices: Vec<usize>,
    pub points: Vec<usize>,
    pub v: Vec<String>,
    pub r: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub a: usize,
    pub b: usize,
    pub external: bool,
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionDoc {
    pub dimension: usize,
    pub cell_dimension: usize,
    pub support: Vec<Vec<i64>>,
    pub cells: Vec<CellDoc>,
    pub edges: Vec<EdgeDoc>,
    pub is_triangulation: bool,
}

impl SubdivisionDoc {
    pub fn from_subdivision(sub: &RegularSubdivision) -> Self {
        let index = |p: &LatticePoint| -> usize {
            sub.support
                .binary_search(p)
                .expect("cell points come from the support")
        };
        SubdivisionDoc {
            dimension: sub.dim,
            cell_dimension: sub.cell_dim,
            support: sub
                .support
                .iter()
                .map(|p| p.to_i64s().expect("desk-scale support"))
                .collect(),
            cells: sub
                .cells
                .iter()
                .map(|c| CellDoc {
                    vertices: c.vertices.iter().map(&index).collect(),
                    points: c.points.iter().map(&index).collect(),
                    v: c.normal.iter().map(format_rational).collect(),
                    r: format_rational(&c.offset),
                })
                .collect(),
            edges: sub
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    a: index(&e.a),
                    b: index(&e.b),
                    external: e.external,
                    cells: e.cells.clone(),
                })
                .collect(),
            is_triangulation: sub.is_triangulation,
        }
    }

    pub fn to_subdivision(&self) -> Result<RegularSubdivision, String> {
        let support: Vec<LatticePoint> = self
            .support
            .iter()
            .map(|c| LatticePoint::from_i64s(c))
            .collect();
        let point = |i: usize| -> Result<LatticePoint, String> {
            support
                .get(i)
                .cloned()
                .ok_or_else(|| format!("support index {i} out of range"))
        };
        let mut cells = Vec::with_capacity(self.cells.len());
        for c in &self.cells {
            cells.push(Cell {
                vertices: c
                    .vertices
                    .iter()
                    .map(|&i| point(i))
                    .collect::<Result<_, _>>()?,
                points: c
                    .points
                    .iter()
                    .map(|&i| point(i))
                    .collect::<Result<_, _>>()?,
                normal: c
                    .v
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<_, _>>()?,
                offset: parse_rational(&c.r)?,
            });
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push(SubdivisionEdge {
                a: point(e.a)?,
                b: point(e.b)?,
                external: e.external,
                cells: e.cells.clone(),
            });
        }
        Ok(RegularSubdivision {
            dim: self.dimension,
            cell_dim: self.cell_dimension,
            support,
            cells,
            edges,
            is_triangulation: self.is_triangulation,
        })
    }
}
