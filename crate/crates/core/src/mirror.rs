//! Coefficient deformations and mirror polynomials.
//!
//! Starting from `f` whose support is the vertex set of its Newton polytope
//! plus extra points `β`, the deformation `f_u` rescales each extra
//! coefficient to the monomial `ξ_β t^{e(u)}` where
//!
//! ```text
//! e(u) = u·ν(β) + (1-u)·(<β,v> + r)          for u ∈ [0, 1],
//! e(u) = (1-u)·(<β,v> + r) - u/(u+1)         for u ∈ (-1, 0],
//! ```
//!
//! `(v, r)` being the affine form through the lifted polytope vertices. At
//! `u = 1` this is `f` itself, at `u = 0` the lifted `β` lands exactly on the
//! vertex plane (so the dual subdivision collapses to one cell), and for
//! `u < 0` it rises above the plane and the term goes tropically inert. The
//! mirror polynomial reflects exponents through the origin and inverts the
//! coefficient exponents, `Σ ξ_r t^r ↦ Σ ξ_r t^{-r}`; the tropical mirror of
//! `f` at `u ∈ (-1, 0]` is the corner locus of the tropicalized mirror of
//! `f_u`, living on the reflected support.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::lattice::LatticePoint;
use crate::newton::{self, LiftedPointSet};
use crate::poly::PolynomialOverSeries;
use crate::tropical::{self, TropicalCurve, TropicalPolynomial};

#[derive(Debug, Error)]
pub enum MirrorError {
    #[error("deformation parameter {0} outside its range")]
    OutOfRange(BigRational),
    #[error("vertex coefficient at {0} is not normalized to order zero")]
    NotNormalized(LatticePoint),
    #[error("deformed coefficient at {0} must be a monomial")]
    NotMonomial(LatticePoint),
    #[error("support point {0} is not a deformation site")]
    NotADeformationSite(LatticePoint),
    #[error("no support point lies off the polytope vertices")]
    NoDeformationSite,
    #[error("several support points lie off the polytope vertices")]
    AmbiguousDeformationSite,
    #[error("lifted polytope vertices are not coplanar; no trivializing plane")]
    TrivializationFailed,
    #[error("negative support value {0}; premultiply by a power of t")]
    NegativeSupportValue(BigRational),
    #[error(transparent)]
    Newton(#[from] newton::NewtonError),
    #[error(transparent)]
    Tropical(#[from] tropical::TropicalError),
}

/// Everything the coefficient schedule needs about one deformed term.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationContext {
    pub beta: LatticePoint,
    /// Complex coefficient of the monomial `a_β`.
    pub xi_beta: num_complex::Complex64,
    /// `ν(β) = ord(a_β)`.
    pub nu_beta: BigRational,
    /// `<β,v> + r` on the trivializing plane; nonnegative by construction.
    pub support_value: BigRational,
}

impl DeformationContext {
    pub fn from_parts(
        beta: LatticePoint,
        xi_beta: num_complex::Complex64,
        nu_beta: BigRational,
        support_value: BigRational,
    ) -> Result<Self, MirrorError> {
        if support_value < BigRational::zero() {
            return Err(MirrorError::NegativeSupportValue(support_value));
        }
        Ok(DeformationContext {
            beta,
            xi_beta,
            nu_beta,
            support_value,
        })
    }
}

/// The exponent of the deformed coefficient at parameter `u ∈ (-1, 1]`.
pub fn deform_exponent(
    ctx: &DeformationContext,
    u: &BigRational,
) -> Result<BigRational, MirrorError> {
    let one = BigRational::from_integer(1.into());
    if *u > one || *u <= -one.clone() {
        return Err(MirrorError::OutOfRange(u.clone()));
    }
    let stay = (&one - u) * &ctx.support_value;
    if *u >= BigRational::zero() {
        Ok(u * &ctx.nu_beta + stay)
    } else {
        Ok(stay - u / (u + one))
    }
}

/// The trivializing plane through the lifted polytope vertices, as
/// `(v, r)` with `ν(α) = <α,v> + r` for every vertex `α`. Fails when the
/// lifted vertices are not coplanar.
fn trivializing_plane(
    f: &PolynomialOverSeries,
    vertices: &[LatticePoint],
) -> Result<(Vec<BigRational>, BigRational), MirrorError> {
    let lift = LiftedPointSet::new(
        vertices
            .iter()
            .map(|v| {
                let nu = f
                    .coefficient(v)
                    .expect("vertices come from the support")
                    .order()
                    .expect("nonzero by invariant");
                (v.clone(), nu)
            })
            .collect(),
    )?;
    let sub = newton::lower_hull_subdivision(&lift)?;
    if sub.cells.len() != 1 || sub.cells[0].points.len() != vertices.len() {
        return Err(MirrorError::TrivializationFailed);
    }
    Ok((sub.cells[0].normal.clone(), sub.cells[0].offset.clone()))
}

/// Deformation data for every support point off the polytope vertex set.
/// Returns the contexts and the global order shift that was applied (as the
/// exponent of a premultiplied power of `t`) to make all support values
/// nonnegative.
pub fn deformation_contexts(
    f: &PolynomialOverSeries,
) -> Result<(Vec<DeformationContext>, BigRational), MirrorError> {
    let polytope = newton::convex_hull(&f.support())?;
    let betas: Vec<LatticePoint> = f
        .support()
        .into_iter()
        .filter(|p| !polytope.vertices.contains(p))
        .collect();
    if betas.is_empty() {
        return Ok((Vec::new(), BigRational::zero()));
    }
    let (v, r) = trivializing_plane(f, &polytope.vertices)?;

    let mut raw = Vec::with_capacity(betas.len());
    let mut worst = BigRational::zero();
    for beta in betas {
        let a = f.coefficient(&beta).expect("beta is a support point");
        if !a.is_monomial() {
            return Err(MirrorError::NotMonomial(beta));
        }
        let sv = beta.dot_rat(&v) + &r;
        if sv < worst {
            worst = sv.clone();
        }
        raw.push((beta, a.clone(), sv));
    }
    let shift = -worst;
    let contexts = raw
        .into_iter()
        .map(|(beta, a, sv)| DeformationContext {
            beta,
            xi_beta: a.leading_coefficient().expect("nonzero by invariant"),
            nu_beta: a.order().expect("nonzero by invariant") + &shift,
            support_value: sv + &shift,
        })
        .collect();
    Ok((contexts, shift))
}

/// `f_u`: every off-vertex coefficient replaced by its scheduled monomial.
/// The whole polynomial is premultiplied by `t^shift` when needed to keep
/// support values nonnegative, so the result may differ from `f` by a global
/// monomial factor even at `u = 1`; corner loci are unaffected.
pub fn deformed_polynomial(
    f: &PolynomialOverSeries,
    u: &BigRational,
) -> Result<PolynomialOverSeries, MirrorError> {
    let one = BigRational::from_integer(1.into());
    if *u > one || *u <= -one {
        return Err(MirrorError::OutOfRange(u.clone()));
    }
    let (contexts, shift) = deformation_contexts(f)?;
    let shifted = if shift.is_zero() {
        f.clone()
    } else {
        f.shift_orders(&shift)
    };
    let mut terms: Vec<(LatticePoint, crate::puiseux::PuiseuxSeries)> = shifted
        .terms()
        .iter()
        .map(|(alpha, a)| (alpha.clone(), a.clone()))
        .collect();
    for ctx in &contexts {
        let exponent = deform_exponent(ctx, u)?;
        let series = crate::puiseux::PuiseuxSeries::monomial(exponent, ctx.xi_beta);
        for (alpha, a) in terms.iter_mut() {
            if alpha == &ctx.beta {
                *a = series.clone();
            }
        }
    }
    Ok(PolynomialOverSeries::new(f.dim(), terms).expect("same support"))
}

/// Reflect exponents through the origin and invert coefficient exponents.
/// An involution.
pub fn mirror_polynomial(f: &PolynomialOverSeries) -> PolynomialOverSeries {
    PolynomialOverSeries::new(
        f.dim(),
        f.terms()
            .iter()
            .map(|(alpha, a)| (alpha.neg(), a.invert_exponents()))
            .collect(),
    )
    .expect("reflection preserves nonzero terms")
}

/// The tropical mirror at `u ∈ (-1, 0]`: the corner locus of the
/// tropicalization of the mirrored deformed polynomial.
pub fn tropical_mirror(
    f: &PolynomialOverSeries,
    u: &BigRational,
) -> Result<TropicalCurve, MirrorError> {
    if *u > BigRational::zero() || *u <= BigRational::from_integer((-1).into()) {
        return Err(MirrorError::OutOfRange(u.clone()));
    }
    let deformed = deformed_polynomial(f, u)?;
    let mirrored = mirror_polynomial(&deformed);
    let trop = TropicalPolynomial::from_series_polynomial(&mirrored);
    Ok(tropical::corner_locus_2d(&trop)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryParameter {
    pub value: BigRational,
    pub clamped: bool,
}

/// The deformation parameter at which the mirrored family is symmetric to the
/// original one, under the normalization that every vertex coefficient has
/// order zero: `-ν(β)`, clamped into `(-1, 0]`.
pub fn symmetry_parameter(f: &PolynomialOverSeries) -> Result<SymmetryParameter, MirrorError> {
    let polytope = newton::convex_hull(&f.support())?;
    for vertex in &polytope.vertices {
        let a = f.coefficient(vertex).expect("vertex is a support point");
        if a.order().expect("nonzero by invariant") != BigRational::zero() {
            return Err(MirrorError::NotNormalized(vertex.clone()));
        }
    }
    let betas: Vec<LatticePoint> = f
        .support()
        .into_iter()
        .filter(|p| !polytope.vertices.contains(p))
        .collect();
    let beta = match betas.as_slice() {
        [] => return Err(MirrorError::NoDeformationSite),
        [beta] => beta.clone(),
        _ => return Err(MirrorError::AmbiguousDeformationSite),
    };
    let a = f.coefficient(&beta).expect("beta is a support point");
    if !a.is_monomial() {
        return Err(MirrorError::NotMonomial(beta));
    }
    let raw = -a.order().expect("nonzero by invariant");
    let zero = BigRational::zero();
    let low = BigRational::new((-1).into(), 1.into())
        + BigRational::new(1.into(), BigInt::from(1u64 << 20));
    if raw > zero {
        Ok(SymmetryParameter {
            value: zero,
            clamped: true,
        })
    } else if raw <= BigRational::from_integer((-1).into()) {
        // The interval is open at -1; report the nearest representable
        // parameter at the perturbation granularity.
        Ok(SymmetryParameter {
            value: low,
            clamped: true,
        })
    } else {
        Ok(SymmetryParameter {
            value: raw,
            clamped: false,
        })
    }
}
