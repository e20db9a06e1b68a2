//! Polynomials over the Puiseux field and over `C`, plus their JSON schema.
//!
//! Both flavours are finite term maps `exponent → coefficient` with nonzero
//! coefficients. Complex polynomials embed into the series world as constant
//! series, which is how the coamoeba layer treats them uniformly.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{format_rational, parse_rational, LatticePoint};
use crate::puiseux::PuiseuxSeries;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomial has no terms")]
    Empty,
    #[error("zero coefficient at {0}")]
    ZeroCoefficient(LatticePoint),
    #[error("exponent {exponent} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        exponent: LatticePoint,
        expected: usize,
        got: usize,
    },
    #[error("invalid document: {0}")]
    BadDocument(String),
}

/// `f(z) = Σ a_α z^α` with `a_α` nonzero Puiseux series.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialOverSeries {
    dim: usize,
    terms: BTreeMap<LatticePoint, PuiseuxSeries>,
}

impl PolynomialOverSeries {
    pub fn new(dim: usize, terms: Vec<(LatticePoint, PuiseuxSeries)>) -> Result<Self, PolyError> {
        if terms.is_empty() {
            return Err(PolyError::Empty);
        }
        let mut map = BTreeMap::new();
        for (alpha, series) in terms {
            if alpha.dim() != dim {
                return Err(PolyError::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                    exponent: alpha,
                });
            }
            if series.is_zero() {
                return Err(PolyError::ZeroCoefficient(alpha));
            }
            map.insert(alpha, series);
        }
        Ok(PolynomialOverSeries { dim, terms: map })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, PuiseuxSeries> {
        &self.terms
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn coefficient(&self, alpha: &LatticePoint) -> Option<&PuiseuxSeries> {
        self.terms.get(alpha)
    }

    /// The lift `α ↦ ord(a_α)` used to build regular subdivisions.
    pub fn order_lift(&self) -> Vec<(LatticePoint, BigRational)> {
        self.terms
            .iter()
            .map(|(alpha, a)| (alpha.clone(), a.order().expect("nonzero by invariant")))
            .collect()
    }

    /// Multiply every coefficient by `t^e`.
    pub fn shift_orders(&self, e: &BigRational) -> PolynomialOverSeries {
        let terms = self
            .terms
            .iter()
            .map(|(alpha, a)| (alpha.clone(), a.mul_monomial(e, Complex64::new(1.0, 0.0))))
            .collect();
        PolynomialOverSeries {
            dim: self.dim,
            terms,
        }
    }
}

/// A bivariate polynomial with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPolynomial2 {
    terms: BTreeMap<LatticePoint, Complex64>,
}

impl ComplexPolynomial2 {
    pub fn new(terms: Vec<(LatticePoint, Complex64)>) -> Result<Self, PolyError> {
        if terms.is_empty() {
            return Err(PolyError::Empty);
        }
        let mut map = BTreeMap::new();
        for (alpha, c) in terms {
            if alpha.dim() != 2 {
                return Err(PolyError::DimensionMismatch {
                    expected: 2,
                    got: alpha.dim(),
                    exponent: alpha,
                });
            }
            if c == Complex64::new(0.0, 0.0) {
                return Err(PolyError::ZeroCoefficient(alpha));
            }
            map.insert(alpha, c);
        }
        Ok(ComplexPolynomial2 { terms: map })
    }

    pub fn from_i64_terms(terms: &[((i64, i64), Complex64)]) -> Self {
        ComplexPolynomial2::new(
            terms
                .iter()
                .map(|&((a, b), c)| (LatticePoint::from_i64s(&[a, b]), c))
                .collect(),
        )
        .expect("nonzero literal terms")
    }

    pub fn terms(&self) -> &BTreeMap<LatticePoint, Complex64> {
        &self.terms
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().cloned().collect()
    }

    pub fn map_coefficients(&self, f: impl Fn(&LatticePoint, Complex64) -> Complex64) -> Self {
        ComplexPolynomial2 {
            terms: self
                .terms
                .iter()
                .map(|(alpha, &c)| (alpha.clone(), f(alpha, c)))
                .collect(),
        }
    }

    /// Embed as a polynomial over constant series.
    pub fn to_series_polynomial(&self) -> PolynomialOverSeries {
        PolynomialOverSeries::new(
            2,
            self.terms
                .iter()
                .map(|(alpha, &c)| (alpha.clone(), PuiseuxSeries::constant(c)))
                .collect(),
        )
        .expect("nonzero by invariant")
    }
}

// ---------------------------------------------------------------------------
// JSON document schema
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientField {
    Complex,
    Puiseux,
}

/// One series term `ξ t^{p/q}` in a document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesTermDoc {
    pub exp: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientDoc {
    Complex { re: f64, im: f64 },
    Series(Vec<SeriesTermDoc>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponent: Vec<i64>,
    pub coefficient: CoefficientDoc,
}

/// The on-disk polynomial format shared by every CLI subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialDocument {
    pub variables: usize,
    pub field: CoefficientField,
    pub terms: Vec<TermDoc>,
}

impl PolynomialDocument {
    pub fn to_series_polynomial(&self) -> Result<PolynomialOverSeries, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let alpha = LatticePoint::from_i64s(&t.exponent);
            let series = match &t.coefficient {
                CoefficientDoc::Complex { re, im } => {
                    PuiseuxSeries::constant(Complex64::new(*re, *im))
                }
                CoefficientDoc::Series(ts) => {
                    let mut parts = Vec::with_capacity(ts.len());
                    for s in ts {
                        let exp = parse_rational(&s.exp).map_err(PolyError::BadDocument)?;
                        parts.push((exp, Complex64::new(s.re, s.im)));
                    }
                    PuiseuxSeries::new(parts)
                }
            };
            terms.push((alpha, series));
        }
        PolynomialOverSeries::new(self.variables, terms)
    }

    pub fn to_complex_polynomial(&self) -> Result<ComplexPolynomial2, PolyError> {
        if self.variables != 2 {
            return Err(PolyError::BadDocument(format!(
                "complex sampling needs 2 variables, document has {}",
                self.variables
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let alpha = LatticePoint::from_i64s(&t.exponent);
            let c = match &t.coefficient {
                CoefficientDoc::Complex { re, im } => Complex64::new(*re, *im),
                CoefficientDoc::Series(ts) => {
                    // A constant series is accepted as a complex coefficient.
                    if ts.len() == 1
                        && parse_rational(&ts[0].exp)
                            .ok()
                            .map(|e| e == BigRational::from_integer(0.into()))
                            == Some(true)
                    {
                        Complex64::new(ts[0].re, ts[0].im)
                    } else {
                        return Err(PolyError::BadDocument(
                            "non-constant series coefficient in a complex polynomial".into(),
                        ));
                    }
                }
            };
            terms.push((alpha, c));
        }
        ComplexPolynomial2::new(terms)
    }

    pub fn from_series_polynomial(f: &PolynomialOverSeries) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|(alpha, a)| TermDoc {
                exponent: alpha.to_i64s().expect("desk-scale exponents"),
                coefficient: CoefficientDoc::Series(
                    a.terms()
                        .iter()
                        .map(|t| SeriesTermDoc {
                            exp: format_rational(&t.exponent),
                            re: t.coefficient.re,
                            im: t.coefficient.im,
                        })
                        .collect(),
                ),
            })
            .collect();
        PolynomialDocument {
            variables: f.dim(),
            field: CoefficientField::Puiseux,
            terms,
        }
    }

    pub fn from_complex_polynomial(f: &ComplexPolynomial2) -> Self {
        let terms = f
            .terms()
            .iter()
            .map(|(alpha, c)| TermDoc {
                exponent: alpha.to_i64s().expect("desk-scale exponents"),
                coefficient: CoefficientDoc::Complex { re: c.re, im: c.im },
            })
            .collect();
        PolynomialDocument {
            variables: 2,
            field: CoefficientField::Complex,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_coefficients_and_empty() {
        assert!(matches!(
            ComplexPolynomial2::new(vec![(
                LatticePoint::from_i64s(&[0, 0]),
                Complex64::new(0.0, 0.0)
            )]),
            Err(PolyError::ZeroCoefficient(_))
        ));
        assert!(matches!(
            PolynomialOverSeries::new(2, vec![]),
            Err(PolyError::Empty)
        ));
    }

    #[test]
    fn document_round_trip_series() {
        let f = PolynomialOverSeries::new(
            2,
            vec![
                (
                    LatticePoint::from_i64s(&[0, 0]),
                    PuiseuxSeries::constant(Complex64::new(1.0, 0.0)),
                ),
                (
                    LatticePoint::from_i64s(&[1, 1]),
                    PuiseuxSeries::new(vec![
                        (
                            BigRational::new((-1).into(), 2.into()),
                            Complex64::new(0.0, 1.0),
                        ),
                        (
                            BigRational::from_integer(3.into()),
                            Complex64::new(2.0, 0.0),
                        ),
                    ]),
                ),
            ],
        )
        .unwrap();
        let doc = PolynomialDocument::from_series_polynomial(&f);
        let back = doc.to_series_polynomial().unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn document_round_trip_complex() {
        let f = ComplexPolynomial2::from_i64_terms(&[
            ((0, 1), Complex64::new(0.0, 1.0)),
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((3, 1), Complex64::new(1.0, 0.0)),
        ]);
        let doc = PolynomialDocument::from_complex_polynomial(&f);
        let back = doc.to_complex_polynomial().unwrap();
        assert_eq!(back, f);
    }
}
