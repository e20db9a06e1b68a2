//! Computational kernel for tropical plane curves and their coamoebas.
//!
//! The crate is organized around one pipeline:
//!
//! 1. [`puiseux`] — truncated Puiseux series with rational exponents, the
//!    valuation, and the leading-argument maps into `C*`.
//! 2. [`newton`] — Newton polytopes, lifted point sets, and the regular
//!    subdivision cut out by the lower hull of the lifted support.
//! 3. [`tropical`] — tropical polynomials (max of affine forms), their corner
//!    loci as weighted balanced plane curves, and duality with the
//!    subdivision.
//! 4. [`mirror`] — the one-parameter coefficient deformation that trivializes
//!    the subdivision, and the mirror polynomial on the reflected support.
//! 5. [`coamoeba`] — exact coamoeba models of complex tropical curves:
//!    simplex pieces transported from the standard line coamoeba, codual
//!    lines, gluing over a triangulation, and raster classification of the
//!    localization behaviour along codual lines.
//! 6. [`sampler`] — numerical coamoebas of honest complex curves via
//!    root-solving over a modulus/argument grid, torus rasters, component
//!    counting and Hausdorff distances.
//! 7. [`render`] — deterministic SVG output for all of the above.
//!
//! All combinatorial layers (hulls, subdivisions, corner loci) use exact
//! big-rational arithmetic; only angles and the sampler live in `f64`.

pub mod angle;
pub mod coamoeba;
pub mod lattice;
pub mod mirror;
pub mod newton;
pub mod poly;
pub mod puiseux;
pub mod render;
pub mod sampler;
pub mod tropical;

pub use lattice::LatticePoint;
pub use poly::{ComplexPolynomial2, PolynomialDocument, PolynomialOverSeries};
pub use puiseux::{PuiseuxSeries, SeriesPoint};
