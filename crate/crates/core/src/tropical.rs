//! Tropical polynomials and their corner loci as weighted plane curves.
//!
//! A tropical polynomial is `x ↦ max_α { <x,α> + c_α }` over a finite set of
//! integer exponents. Its corner locus — the points where the max is attained
//! at least twice — is computed here by dualizing the regular subdivision of
//! the lift `ν = -c`: every 2-cell with supporting form `y = <x,v> + r`
//! contributes the vertex `v`, every inner edge of the subdivision a bounded
//! edge, and every boundary edge a ray in the outward primitive normal
//! direction. Edge and ray weights are the lattice lengths of the dual
//! subdivision edges, which makes the balancing condition at each vertex an
//! assertable identity rather than a definition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::lattice::{format_rational, parse_rational, LatticePoint, RatVec};
use crate::newton::{self, LiftedPointSet, RegularSubdivision};
use crate::poly::PolynomialOverSeries;

#[derive(Debug, Error)]
pub enum TropicalError {
    #[error("a single tropical term has an empty corner locus")]
    EmptyCurve,
    #[error("corner loci are only computed in the plane, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Newton(#[from] newton::NewtonError),
}

/// `x ↦ max { <x,α> + c_α }`.
#[derive(Clone, Debug, PartialEq)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: BTreeMap<LatticePoint, BigRational>,
}

impl TropicalPolynomial {
    pub fn new(dim: usize, terms: Vec<(LatticePoint, BigRational)>) -> Self {
        assert!(!terms.is_empty(), "tropical polynomial needs a term");
        assert!(terms.iter().all(|(p, _)| p.dim() == dim));
        TropicalPolynomial {
            dim,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn from_i64s(dim: usize, terms: &[(&[i64], (i64, i64))]) -> Self {
        TropicalPolynomial::new(
            dim,
            terms
                .iter()
                .map(|(p, (n, d))| {
                    (
                        LatticePoint::from_i64s(p),
                        BigRational::new((*n).into(), (*d).into()),
                    )
                })
                .collect(),
        )
    }

    /// Tropicalization of a polynomial over the series field: `c_α = -ord(a_α)`.
    pub fn from_series_polynomial(f: &PolynomialOverSeries) -> Self {
        TropicalPolynomial::new(
            f.dim(),
            f.order_lift()
                .into_iter()
                .map(|(alpha, nu)| (alpha, -nu))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, BigRational> {
        &self.terms
    }

    /// The lift whose lower hull is dual to the corner locus.
    pub fn lift(&self) -> LiftedPointSet {
        LiftedPointSet::new(
            self.terms
                .iter()
                .map(|(alpha, c)| (alpha.clone(), -c))
                .collect(),
        )
        .expect("terms are distinct and nonempty")
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(alpha, c)| alpha.dot_rat(x) + c)
            .max()
            .expect("nonempty")
    }

    /// All exponents attaining the maximum at `x` (exact).
    pub fn maximizer_set(&self, x: &[BigRational]) -> Vec<LatticePoint> {
        let value = self.eval(x);
        self.terms
            .iter()
            .filter(|(alpha, c)| alpha.dot_rat(x) + *c == value)
            .map(|(alpha, _)| alpha.clone())
            .collect()
    }
}

/// A bounded edge of a tropical curve, dual to an inner subdivision edge.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveEdge {
    pub from: usize,
    pub to: usize,
    pub weight: BigInt,
    pub dual: (LatticePoint, LatticePoint),
}

/// An unbounded ray, dual to a boundary subdivision edge.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRay {
    pub base: usize,
    /// Primitive integer direction.
    pub direction: LatticePoint,
    pub weight: BigInt,
    pub dual: (LatticePoint, LatticePoint),
}

/// A full affine line component; only produced by degenerate
/// (one-dimensional) supports, where the curve is a union of parallel lines
/// `<normal, x> = offset` and has no vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveLine {
    pub normal: LatticePoint,
    pub offset: BigRational,
    pub weight: BigInt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropicalCurve {
    /// One vertex per 2-cell of the dual subdivision, index-aligned with
    /// `subdivision.cells`.
    pub vertices: Vec<RatVec>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
    pub lines: Vec<CurveLine>,
    pub subdivision: RegularSubdivision,
}

impl TropicalCurve {
    pub fn is_degenerate(&self) -> bool {
        self.vertices.is_empty() && !self.lines.is_empty()
    }
}

/// Scale a rational direction vector to its primitive integer form.
fn primitive_direction(delta: &[BigRational]) -> LatticePoint {
    let lcm = delta.iter().fold(BigInt::from(1), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = delta
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    LatticePoint::new(ints).primitive()
}

/// Corner locus of a plane tropical polynomial, by dualizing the lower-hull
/// subdivision of its lift.
pub fn corner_locus_2d(p: &TropicalPolynomial) -> Result<TropicalCurve, TropicalError> {
    if p.dim() != 2 {
        return Err(TropicalError::UnsupportedDimension(p.dim()));
    }
    if p.terms.len() < 2 {
        return Err(TropicalError::EmptyCurve);
    }
    let sub = newton::lower_hull_subdivision(&p.lift())?;

    if sub.cell_dim <= 1 {
        // Parallel lines orthogonal to the support direction: one per segment
        // cell, with weight its lattice length.
        let mut lines = Vec::new();
        for cell in &sub.cells {
            if cell.vertices.len() != 2 {
                continue;
            }
            let dir = cell.vertices[1].sub(&cell.vertices[0]);
            let normal = dir.primitive();
            let weight = dir.content();
            // The dual line sits where the two cell endpoints tie:
            // <x, normal> = (ν(b) - ν(a)) / lattice length, with ν = -c.
            let ha = cell.vertices[0].dot_rat(&cell.normal) + &cell.offset;
            let hb = cell.vertices[1].dot_rat(&cell.normal) + &cell.offset;
            let offset = (hb - ha) / BigRational::from(weight.clone());
            lines.push(CurveLine {
                normal,
                offset,
                weight,
            });
        }
        return Ok(TropicalCurve {
            vertices: Vec::new(),
            edges: Vec::new(),
            rays: Vec::new(),
            lines,
            subdivision: sub,
        });
    }

    let vertices: Vec<RatVec> = sub.cells.iter().map(|c| c.normal.clone()).collect();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for e in &sub.edges {
        let weight = e.lattice_length();
        let dual = (e.a.clone(), e.b.clone());
        match e.cells.as_slice() {
            [i, j] => {
                edges.push(CurveEdge {
                    from: *i,
                    to: *j,
                    weight,
                    dual,
                });
            }
            [i] => {
                // Outward primitive normal of the boundary edge with respect
                // to its cell.
                let edge_dir = e.b.sub(&e.a);
                let normal =
                    LatticePoint::new(vec![-edge_dir.coord(1).clone(), edge_dir.coord(0).clone()])
                        .primitive();
                let cell = &sub.cells[*i];
                let k = BigRational::from(BigInt::from(cell.points.len() as i64));
                let centroid: RatVec = (0..2)
                    .map(|c| {
                        let s: BigInt = cell.points.iter().map(|q| q.coord(c).clone()).sum();
                        BigRational::from(s) / &k
                    })
                    .collect();
                let mid: RatVec = (0..2)
                    .map(|c| {
                        BigRational::from(e.a.coord(c) + e.b.coord(c))
                            / BigRational::from(BigInt::from(2))
                    })
                    .collect();
                let toward: RatVec = centroid.iter().zip(&mid).map(|(a, b)| a - b).collect();
                let side = normal.dot_rat(&toward);
                let direction = if side.is_positive() {
                    normal.neg()
                } else {
                    normal
                };
                rays.push(CurveRay {
                    base: *i,
                    direction,
                    weight,
                    dual,
                });
            }
            _ => unreachable!("a plane subdivision edge bounds one or two cells"),
        }
    }

    Ok(TropicalCurve {
        vertices,
        edges,
        rays,
        lines: Vec::new(),
        subdivision: sub,
    })
}

/// Check the curve/subdivision duality: vertex count equals 2-cell count,
/// 1-cells match subdivision edges one to one, and every 1-cell is orthogonal
/// to its dual edge.
pub fn duality_check(curve: &TropicalCurve, sub: &RegularSubdivision) -> bool {
    if curve.is_degenerate() {
        return curve.lines.len() == sub.cells.len();
    }
    if curve.vertices.len() != sub.cells.len() {
        return false;
    }
    if curve.edges.len() + curve.rays.len() != sub.edges.len() {
        return false;
    }
    let edge_set: Vec<(LatticePoint, LatticePoint)> = sub
        .edges
        .iter()
        .map(|e| (e.a.clone(), e.b.clone()))
        .collect();
    let in_sub = |d: &(LatticePoint, LatticePoint)| edge_set.iter().any(|e| e == d);
    for e in &curve.edges {
        if !in_sub(&e.dual) {
            return false;
        }
        let delta: Vec<BigRational> = curve.vertices[e.to]
            .iter()
            .zip(&curve.vertices[e.from])
            .map(|(a, b)| a - b)
            .collect();
        let alpha_beta = e.dual.0.sub(&e.dual.1);
        if !alpha_beta.dot_rat(&delta).is_zero() {
            return false;
        }
    }
    for r in &curve.rays {
        if !in_sub(&r.dual) {
            return false;
        }
        let alpha_beta = r.dual.0.sub(&r.dual.1);
        if !alpha_beta.dot_int(&r.direction).is_zero() {
            return false;
        }
    }
    true
}

/// Balancing: at every vertex the weighted primitive outgoing directions sum
/// to zero.
pub fn balancing_check(curve: &TropicalCurve) -> bool {
    if curve.is_degenerate() {
        return true;
    }
    for v in 0..curve.vertices.len() {
        let mut sum = vec![BigInt::zero(), BigInt::zero()];
        for e in &curve.edges {
            let (from, to) = (e.from, e.to);
            if from != v && to != v {
                continue;
            }
            let (a, b) = if from == v { (from, to) } else { (to, from) };
            let delta: Vec<BigRational> = curve.vertices[b]
                .iter()
                .zip(&curve.vertices[a])
                .map(|(x, y)| x - y)
                .collect();
            let dir = primitive_direction(&delta);
            for c in 0..2 {
                sum[c] += dir.coord(c) * &e.weight;
            }
        }
        for r in &curve.rays {
            if r.base != v {
                continue;
            }
            for c in 0..2 {
                sum[c] += r.direction.coord(c) * &r.weight;
            }
        }
        if !sum[0].is_zero() || !sum[1].is_zero() {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// JSON export
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveEdgeDoc {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
    pub dual: (Vec<i64>, Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveRayDoc {
    pub base: usize,
    pub direction: Vec<i64>,
    pub weight: i64,
    pub dual: (Vec<i64>, Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveLineDoc {
    pub normal: Vec<i64>,
    pub offset: String,
    pub weight: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<CurveEdgeDoc>,
    pub rays: Vec<CurveRayDoc>,
    pub lines: Vec<CurveLineDoc>,
    pub subdivision: newton::SubdivisionDoc,
}

impl CurveDoc {
    pub fn from_curve(curve: &TropicalCurve) -> Self {
        let lat = |p: &LatticePoint| p.to_i64s().expect("desk-scale exponents");
        let wt = |w: &BigInt| i64::try_from(w.clone()).expect("desk-scale weight");
        CurveDoc {
            vertices: curve
                .vertices
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
            edges: curve
                .edges
                .iter()
                .map(|e| CurveEdgeDoc {
                    from: e.from,
                    to: e.to,
                    weight: wt(&e.weight),
                    dual: (lat(&e.dual.0), lat(&e.dual.1)),
                })
                .collect(),
            rays: curve
                .rays
                .iter()
                .map(|r| CurveRayDoc {
                    base: r.base,
                    direction: lat(&r.direction),
                    weight: wt(&r.weight),
                    dual: (lat(&r.dual.0), lat(&r.dual.1)),
                })
                .collect(),
            lines: curve
                .lines
                .iter()
                .map(|l| CurveLineDoc {
                    normal: lat(&l.normal),
                    offset: format_rational(&l.offset),
                    weight: wt(&l.weight),
                })
                .collect(),
            subdivision: newton::SubdivisionDoc::from_subdivision(&curve.subdivision),
        }
    }

    pub fn to_curve(&self) -> Result<TropicalCurve, String> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<RatVec, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TropicalCurve {
            vertices,
            edges: self
                .edges
                .iter()
                .map(|e| CurveEdge {
                    from: e.from,
                    to: e.to,
                    weight: BigInt::from(e.weight),
                    dual: (
                        LatticePoint::from_i64s(&e.dual.0),
                        LatticePoint::from_i64s(&e.dual.1),
                    ),
                })
                .collect(),
            rays: self
                .rays
                .iter()
                .map(|r| CurveRay {
                    base: r.base,
                    direction: LatticePoint::from_i64s(&r.direction),
                    weight: BigInt::from(r.weight),
                    dual: (
                        LatticePoint::from_i64s(&r.dual.0),
                        LatticePoint::from_i64s(&r.dual.1),
                    ),
                })
                .collect(),
            lines: self
                .lines
                .iter()
                .map(|l| {
                    Ok(CurveLine {
                        normal: LatticePoint::from_i64s(&l.normal),
                        offset: parse_rational(&l.offset)?,
                        weight: BigInt::from(l.weight),
                    })
                })
                .collect::<Result<Vec<_>, String>>()?,
            subdivision: self.subdivision.to_subdivision()?,
        })
    }
}
