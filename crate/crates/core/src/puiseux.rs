//! Truncated Puiseux series and the maps into `C*`.
//!
//! A series is a finite sum `a(t) = Σ ξ_r t^r` with rational exponents `r`
//! and nonzero complex coefficients `ξ_r`, stored with strictly increasing
//! exponents. The order of `a` is the least exponent, the valuation is its
//! negative, and the complexified valuation sends `a` to
//! `e^{val(a)} · e^{i·arg(ξ)}` where `ξ` is the coefficient of the least
//! exponent.
//!
//! The zero series is represented by an empty term list and rejected by every
//! operation that needs an element of `K*`; nothing downstream ever wants a
//! `-∞` valuation.

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::angle;
use crate::lattice::rat_to_f64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PuiseuxError {
    /// The zero series has no order, valuation, or leading argument.
    /// `coordinate` is the 0-based position when raised by a point map.
    #[error("zero series{}", match .coordinate {
        Some(i) => format!(" at coordinate {i}"),
        None => String::new(),
    })]
    ZeroSeries { coordinate: Option<usize> },
}

fn zero_series() -> PuiseuxError {
    PuiseuxError::ZeroSeries { coordinate: None }
}

/// One term `ξ t^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxTerm {
    pub exponent: BigRational,
    pub coefficient: Complex64,
}

/// A finite truncated Puiseux series; empty means zero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PuiseuxSeries {
    terms: Vec<PuiseuxTerm>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new() }
    }

    /// Build from arbitrary terms: sorts, merges equal exponents, and drops
    /// coefficients that cancel to exactly zero.
    pub fn new(terms: Vec<(BigRational, Complex64)>) -> Self {
        let mut terms: Vec<PuiseuxTerm> = terms
            .into_iter()
            .map(|(exponent, coefficient)| PuiseuxTerm {
                exponent,
                coefficient,
            })
            .collect();
        terms.sort_by(|a, b| a.exponent.cmp(&b.exponent));
        let mut merged: Vec<PuiseuxTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.exponent == t.exponent => {
                    last.coefficient += t.coefficient;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coefficient != Complex64::new(0.0, 0.0));
        PuiseuxSeries { terms: merged }
    }

    pub fn monomial(exponent: BigRational, coefficient: Complex64) -> Self {
        PuiseuxSeries::new(vec![(exponent, coefficient)])
    }

    /// The constant series `c t^0`.
    pub fn constant(c: Complex64) -> Self {
        PuiseuxSeries::monomial(BigRational::from_integer(0.into()), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[PuiseuxTerm] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Least exponent.
    pub fn order(&self) -> Result<BigRational, PuiseuxError> {
        self.terms
            .first()
            .map(|t| t.exponent.clone())
            .ok_or_else(zero_series)
    }

    /// `val(a) = -ord(a)`.
    pub fn valuation(&self) -> Result<BigRational, PuiseuxError> {
        Ok(-self.order()?)
    }

    /// Coefficient of the least exponent.
    pub fn leading_coefficient(&self) -> Result<Complex64, PuiseuxError> {
        self.terms
            .first()
            .map(|t| t.coefficient)
            .ok_or_else(zero_series)
    }

    /// Argument of the leading coefficient, in `[0, 2π)`.
    pub fn arg_map(&self) -> Result<f64, PuiseuxError> {
        Ok(angle::arg(self.leading_coefficient()?))
    }

    /// The complexified valuation `a ↦ e^{val(a)} e^{i arg(ξ)}` with `ξ` the
    /// leading coefficient.
    pub fn w_map(&self) -> Result<Complex64, PuiseuxError> {
        let modulus = rat_to_f64(&self.valuation()?).exp();
        let theta = self.arg_map()?;
        Ok(Complex64::from_polar(modulus, theta))
    }

    pub fn add(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut terms: Vec<(BigRational, Complex64)> = self
            .terms
            .iter()
            .map(|t| (t.exponent.clone(), t.coefficient))
            .collect();
        terms.extend(
            other
                .terms
                .iter()
                .map(|t| (t.exponent.clone(), t.coefficient)),
        );
        PuiseuxSeries::new(terms)
    }

    pub fn mul(&self, other: &PuiseuxSeries) -> PuiseuxSeries {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push((&a.exponent + &b.exponent, a.coefficient * b.coefficient));
            }
        }
        PuiseuxSeries::new(terms)
    }

    /// Multiply by the monomial `c t^e`.
    pub fn mul_monomial(&self, e: &BigRational, c: Complex64) -> PuiseuxSeries {
        PuiseuxSeries::new(
            self.terms
                .iter()
                .map(|t| (&t.exponent + e, t.coefficient * c))
                .collect(),
        )
    }

    /// `Σ ξ_r t^r ↦ Σ ξ_r t^{-r}`.
    pub fn invert_exponents(&self) -> PuiseuxSeries {
        PuiseuxSeries::new(
            self.terms
                .iter()
                .map(|t| (-&t.exponent, t.coefficient))
                .collect(),
        )
    }
}

/// A point of `(K*)^n`: every coordinate is a nonzero series.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesPoint {
    pub coords: Vec<PuiseuxSeries>,
}

impl SeriesPoint {
    pub fn new(coords: Vec<PuiseuxSeries>) -> Self {
        SeriesPoint { coords }
    }

    /// Coordinate-wise complexified valuation.
    pub fn w_map(&self) -> Result<Vec<Complex64>, PuiseuxError> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.w_map().map_err(|_| PuiseuxError::ZeroSeries {
                    coordinate: Some(i),
                })
            })
            .collect()
    }
}
