//! Points of the probability simplex `S^{m-1}`.
//!
//! A [`SimplexPoint`] always satisfies `x_i >= 0` and `|sum(x) - 1| <= 1e-12`.
//! Raw input is accepted with a looser ingest tolerance and then renormalized.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Post-normalization tolerance on the coordinate sum, and the magnitude below
/// which negative input coordinates are clamped to zero.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Tolerance on the raw input sum before renormalization.
pub const INGEST_TOLERANCE: f64 = 1e-9;

/// Default threshold for [`SimplexPoint::support`].
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-9;

/// A validated probability vector on `m >= 2` symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    /// Validates raw coordinates and renormalizes them to sum to one.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyVector);
        }
        if raw.len() < 2 {
            return Err(Error::TooFewCoordinates(raw.len()));
        }
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index: index + 1 });
            }
            if value < -SUM_TOLERANCE {
                return Err(Error::NegativeCoordinate { index: index + 1, value });
            }
        }
        let sum: f64 = raw.iter().sum();
        if (sum - 1.0).abs() > INGEST_TOLERANCE {
            return Err(Error::SumOutOfRange { sum });
        }
        Ok(Self::from_weights(raw.to_vec()))
    }

    /// Builds a point from nonnegative weights by dividing by their sum.
    ///
    /// Negative entries (floating noise) are clamped to zero. The caller
    /// guarantees a positive finite total.
    pub(crate) fn from_weights(mut weights: Vec<f64>) -> Self {
        for w in weights.iter_mut() {
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let sum: f64 = weights.iter().sum();
        debug_assert!(sum > 0.0 && sum.is_finite());
        for w in weights.iter_mut() {
            *w /= sum;
        }
        Self { coords: weights }
    }

    /// The vertex `e_i` (1-based).
    pub fn vertex(m: usize, i: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewCoordinates(m));
        }
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, len: m });
        }
        let mut coords = alloc::vec![0.0; m];
        coords[i - 1] = 1.0;
        Ok(Self { coords })
    }

    /// The barycenter `c = (1/m, ..., 1/m)`.
    pub fn center(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::TooFewCoordinates(m));
        }
        Ok(Self { coords: alloc::vec![1.0 / m as f64; m] })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Coordinate `x_i`, 1-based.
    pub fn coord(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.coords.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.coords.len() });
        }
        Ok(self.coords[i - 1])
    }

    /// The last coordinate `x_m`.
    pub fn last(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    /// `supp(x) = {i : x_i > tol}` as sorted 1-based indices.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > tol)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Sup-norm distance.
    pub fn sup_distance(&self, other: &SimplexPoint) -> f64 {
        sup_distance(&self.coords, &other.coords)
    }

    pub fn min_coord(&self) -> f64 {
        self.coords.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_coord(&self) -> f64 {
        self.coords.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// True when every coordinate exceeds `tol`.
    pub fn is_interior(&self, tol: f64) -> bool {
        self.coords.iter().all(|&v| v > tol)
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Lexicographic order used to sort reports canonically.
pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> core::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y) {
            Some(core::cmp::Ordering::Equal) | None => continue,
            Some(ord) => return ord,
        }
    }
    a.len().cmp(&b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn center_is_accepted_unchanged() {
        let p = SimplexPoint::new(&[0.25, 0.25, 0.25, 0.25]).unwrap();
        assert_eq!(p.coords(), &[0.25, 0.25, 0.25, 0.25]);
    }

    #[test]
    fn rejects_negative_coordinate() {
        let err = SimplexPoint::new(&[0.5, 0.6, -0.1]).unwrap_err();
        assert!(matches!(err, Error::NegativeCoordinate { index: 3, .. }));
    }

    #[test]
    fn renormalizes_small_excess() {
        let p = SimplexPoint::new(&[0.3, 0.7 + 1e-13]).unwrap();
        let sum: f64 = p.coords().iter().sum();
        assert!((sum - 1.0).abs() <= SUM_TOLERANCE);
    }

    #[test]
    fn clamps_tiny_negatives() {
        let p = SimplexPoint::new(&[0.5, -1e-13, 0.5 + 1e-13]).unwrap();
        assert_eq!(p.coords()[1], 0.0);
    }

    #[test]
    fn rejects_bad_sums_and_shapes() {
        assert_eq!(SimplexPoint::new(&[]), Err(Error::EmptyVector));
        assert_eq!(SimplexPoint::new(&[1.0]), Err(Error::TooFewCoordinates(1)));
        assert!(matches!(SimplexPoint::new(&[0.5, 0.6]), Err(Error::SumOutOfRange { .. })));
        assert!(matches!(
            SimplexPoint::new(&[f64::NAN, 1.0]),
            Err(Error::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn support_examples() {
        let p = SimplexPoint::new(&[0.5, 0.0, 0.5]).unwrap();
        assert_eq!(p.support(DEFAULT_ZERO_TOLERANCE), [1, 3]);
        let c = SimplexPoint::center(3).unwrap();
        assert_eq!(c.support(DEFAULT_ZERO_TOLERANCE), [1, 2, 3]);
        let q = SimplexPoint::new(&[0.5, 5e-10, 0.5 - 5e-10]).unwrap();
        assert_eq!(q.support(1e-9), [1, 3]);
    }

    #[test]
    fn vertex_bounds() {
        assert!(SimplexPoint::vertex(3, 0).is_err());
        assert!(SimplexPoint::vertex(3, 4).is_err());
        assert_eq!(SimplexPoint::vertex(3, 2).unwrap().coords(), &[0.0, 1.0, 0.0]);
    }
}
