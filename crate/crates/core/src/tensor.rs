//! Heredity coefficient tensors `p[i,j,k]` and the quadratic map they define:
//! `x'_k = Σ_{i,j} p[i,j,k] x_i x_j`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::simplex::SimplexPoint;

/// Tolerance on `Σ_k p[i,j,k] = 1`.
pub const ROW_SUM_TOLERANCE: f64 = 1e-12;

/// Entries at or below this magnitude count as zero for [`CoefficientTensor::is_volterra`].
/// Matches the row-sum tolerance: off-pattern mass below it is rounding noise.
pub const VOLTERRA_TOLERANCE: f64 = 1e-12;

/// Symmetric, nonnegative, stochastic coefficients of a quadratic stochastic
/// operator on `m` symbols.
///
/// Storage is dense over unordered pairs `i <= j`, with the `m` offspring
/// probabilities of each pair contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTensor {
    m: usize,
    data: Vec<f64>,
}

#[inline]
fn pair_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < m);
    i * (2 * m - i + 1) / 2 + (j - i)
}

impl CoefficientTensor {
    /// Builds and validates a tensor from sparse 1-based entries `(i, j, k, p)`.
    ///
    /// Entries may be given for `i <= j` or `i > j`; both orientations refer to
    /// the same unordered pair. Omitted entries are zero.
    pub fn from_entries(m: usize, entries: &[(usize, usize, usize, f64)]) -> Result<Self> {
        if m < 2 {
            return Err(Error::DimensionTooSmall { m, min: 2 });
        }
        let pairs = m * (m + 1) / 2;
        let mut data = alloc::vec![0.0; pairs * m];
        // 0 = unset, 1 = set as i<=j, 2 = set as i>j
        let mut origin = alloc::vec![0u8; pairs * m];
        for &(i, j, k, value) in entries {
            for idx in [i, j, k] {
                if idx == 0 || idx > m {
                    return Err(Error::IndexOutOfRange { index: idx, len: m });
                }
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteCoefficient { i, j, k });
            }
            if value < 0.0 {
                return Err(Error::NegativeCoefficient { i, j, k, value });
            }
            let (a, b, tag) = if i <= j { (i - 1, j - 1, 1) } else { (j - 1, i - 1, 2) };
            let slot = pair_index(m, a, b) * m + (k - 1);
            match origin[slot] {
                0 => {
                    data[slot] = value;
                    origin[slot] = tag;
                }
                prev if prev == tag || i == j => {
                    return Err(Error::DuplicateEntry { i, j, k });
                }
                _ => {
                    if data[slot] != value {
                        return Err(Error::AsymmetricInput { i: a + 1, j: b + 1, k });
                    }
                }
            }
        }
        Self::from_dense(m, data)
    }

    /// Builds a tensor from a function of 0-based `(i, j, k)` with `i <= j`.
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::DimensionTooSmall { m, min: 2 });
        }
        let mut data = Vec::with_capacity(m * (m + 1) / 2 * m);
        for i in 0..m {
            for j in i..m {
                for k in 0..m {
                    data.push(f(i, j, k));
                }
            }
        }
        Self::from_dense(m, data)
    }

    fn from_dense(m: usize, data: Vec<f64>) -> Result<Self> {
        let t = Self { m, data };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let m = self.m;
        for i in 0..m {
            for j in i..m {
                let row = self.pair_row(i, j);
                for (k, &v) in row.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::NonFiniteCoefficient { i: i + 1, j: j + 1, k: k + 1 });
                    }
                    if v < 0.0 {
                        return Err(Error::NegativeCoefficient { i: i + 1, j: j + 1, k: k + 1, value: v });
                    }
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
                    return Err(Error::RowSumNotOne { i: i + 1, j: j + 1, sum });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    fn pair_row(&self, i: usize, j: usize) -> &[f64] {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        let start = pair_index(self.m, a, b) * self.m;
        &self.data[start..start + self.m]
    }

    /// `p[i,j,k]` for 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        for idx in [i, j, k] {
            if idx == 0 || idx > self.m {
                return Err(Error::IndexOutOfRange { index: idx, len: self.m });
            }
        }
        Ok(self.pair_row(i - 1, j - 1)[k - 1])
    }

    /// Nonzero entries as 1-based `(i, j, k, p)` with `i <= j`, in storage order.
    pub fn entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i..self.m {
                for (k, &v) in self.pair_row(i, j).iter().enumerate() {
                    if v != 0.0 {
                        out.push((i + 1, j + 1, k + 1, v));
                    }
                }
            }
        }
        out
    }

    /// Largest `|Σ_k p[i,j,k] - 1|` over all pairs.
    pub fn max_row_residual(&self) -> f64 {
        self.data
            .chunks(self.m)
            .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference to another tensor of the same dimension.
    pub fn max_abs_diff(&self, other: &CoefficientTensor) -> Result<f64> {
        self.check_dim(other.m)?;
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    /// True iff `p[i,j,k] = 0` (up to [`VOLTERRA_TOLERANCE`]) whenever `k ∉ {i, j}`.
    pub fn is_volterra(&self) -> bool {
        for i in 0..self.m {
            for j in i..self.m {
                for (k, &v) in self.pair_row(i, j).iter().enumerate() {
                    if k != i && k != j && v > VOLTERRA_TOLERANCE {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found });
        }
        Ok(())
    }

    /// Evaluates the quadratic form without renormalization:
    /// `out_k = Σ_i p[i,i,k] x_i² + 2 Σ_{i<j} p[i,j,k] x_i x_j`.
    pub fn evaluate_raw(&self, x: &[f64], out: &mut [f64]) {
        let m = self.m;
        debug_assert!(x.len() == m && out.len() == m);
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut row_start = 0;
        for i in 0..m {
            let xi = x[i];
            for j in i..m {
                let w = if i == j { xi * xi } else { 2.0 * xi * x[j] };
                let row = &self.data[row_start..row_start + m];
                row_start += m;
                if w == 0.0 {
                    continue;
                }
                for (o, &p) in out.iter_mut().zip(row) {
                    *o += p * w;
                }
            }
        }
    }

    /// One application of the operator, renormalized onto the simplex.
    pub fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint> {
        self.check_dim(x.dim())?;
        let mut out = alloc::vec![0.0; self.m];
        self.evaluate_raw(x.coords(), &mut out);
        Ok(SimplexPoint::from_weights(out))
    }

    /// Jacobian `J[k][j] = 2 Σ_i p[i,j,k] x_i` of the raw quadratic map at any `x ∈ R^m`.
    pub fn jacobian_raw(&self, x: &[f64]) -> Matrix {
        let m = self.m;
        let mut jac = Matrix::zeros(m, m);
        let mut row_start = 0;
        for i in 0..m {
            for j in i..m {
                let row = &self.data[row_start..row_start + m];
                row_start += m;
                for (k, &p) in row.iter().enumerate() {
                    if p == 0.0 {
                        continue;
                    }
                    if i == j {
                        jac[(k, i)] += 2.0 * p * x[i];
                    } else {
                        jac[(k, j)] += 2.0 * p * x[i];
                        jac[(k, i)] += 2.0 * p * x[j];
                    }
                }
            }
        }
        jac
    }

    /// Jacobian of the (unrenormalized) map at a simplex point.
    pub fn jacobian(&self, x: &SimplexPoint) -> Result<Matrix> {
        self.check_dim(x.dim())?;
        Ok(self.jacobian_raw(x.coords()))
    }
}

/// Entrywise `w·T1 + (1-w)·T2`.
pub fn convex_combine(t1: &CoefficientTensor, t2: &CoefficientTensor, w: f64) -> Result<CoefficientTensor> {
    t1.check_dim(t2.m)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::WeightOutOfRange(w));
    }
    let data = t1.data.iter().zip(&t2.data).map(|(a, b)| w * a + (1.0 - w) * b).collect();
    CoefficientTensor::from_dense(t1.m, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zakharevich() -> CoefficientTensor {
        CoefficientTensor::from_entries(
            3,
            &[(1, 1, 1, 1.0), (1, 2, 1, 1.0), (2, 2, 2, 1.0), (2, 3, 2, 1.0), (3, 3, 3, 1.0), (1, 3, 3, 1.0)],
        )
        .unwrap()
    }

    #[test]
    fn minimal_valid_tensor() {
        let t = CoefficientTensor::from_entries(2, &[(1, 1, 1, 1.0), (1, 2, 1, 0.5), (1, 2, 2, 0.5), (2, 2, 2, 1.0)]);
        assert!(t.is_ok());
    }

    #[test]
    fn row_sum_error_names_pair() {
        let err = CoefficientTensor::from_entries(2, &[(1, 1, 1, 0.5)]).unwrap_err();
        assert_eq!(err, Error::RowSumNotOne { i: 1, j: 1, sum: 0.5 });
    }

    #[test]
    fn rejects_negative_and_asymmetric() {
        let neg = CoefficientTensor::from_entries(2, &[(1, 1, 1, -0.1)]);
        assert!(matches!(neg, Err(Error::NegativeCoefficient { .. })));
        let asym = CoefficientTensor::from_entries(
            2,
            &[(1, 1, 1, 1.0), (1, 2, 1, 0.5), (2, 1, 1, 0.4), (1, 2, 2, 0.5), (2, 2, 2, 1.0)],
        );
        assert_eq!(asym.unwrap_err(), Error::AsymmetricInput { i: 1, j: 2, k: 1 });
        let mirrored = CoefficientTensor::from_entries(
            2,
            &[(1, 1, 1, 1.0), (2, 1, 1, 0.5), (1, 2, 1, 0.5), (2, 1, 2, 0.5), (2, 2, 2, 1.0)],
        );
        assert!(mirrored.is_ok());
        let dup = CoefficientTensor::from_entries(2, &[(1, 1, 1, 1.0), (1, 1, 1, 1.0)]);
        assert!(matches!(dup, Err(Error::DuplicateEntry { .. })));
    }

    #[test]
    fn zakharevich_is_valid_volterra() {
        let z = zakharevich();
        assert!(z.is_volterra());
        let x = SimplexPoint::new(&[0.5, 0.5, 0.0]).unwrap();
        let y = z.apply(&x).unwrap();
        assert!((y.coords()[0] - 0.75).abs() < 1e-15);
        assert!((y.coords()[1] - 0.25).abs() < 1e-15);
        assert_eq!(y.coords()[2], 0.0);
    }

    #[test]
    fn vertex_maps_to_diagonal_row() {
        let z = zakharevich();
        for i in 1..=3 {
            let e = SimplexPoint::vertex(3, i).unwrap();
            let y = z.apply(&e).unwrap();
            for k in 1..=3 {
                assert_eq!(y.coords()[k - 1], z.get(i, i, k).unwrap());
            }
        }
    }

    #[test]
    fn volterra_tolerance_is_sharp() {
        let build = |eps: f64| {
            CoefficientTensor::from_entries(
                3,
                &[
                    (1, 1, 1, 1.0),
                    (1, 2, 1, 1.0 - eps),
                    (1, 2, 3, eps),
                    (2, 2, 2, 1.0),
                    (2, 3, 2, 1.0),
                    (3, 3, 3, 1.0),
                    (1, 3, 3, 1.0),
                ],
            )
            .unwrap()
        };
        assert!(build(1e-14).is_volterra());
        assert!(!build(1e-3).is_volterra());
    }

    #[test]
    fn combine_endpoints_are_exact() {
        let z = zakharevich();
        let other = CoefficientTensor::from_fn(3, |i, j, k| if k == i.min(j) { 1.0 } else { 0.0 }).unwrap();
        assert_eq!(convex_combine(&z, &other, 1.0).unwrap(), z);
        assert_eq!(convex_combine(&z, &other, 0.0).unwrap(), other);
        assert!(matches!(convex_combine(&z, &other, 1.5), Err(Error::WeightOutOfRange(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let z = zakharevich();
        let x = SimplexPoint::new(&[0.5, 0.5]).unwrap();
        assert_eq!(z.apply(&x).unwrap_err(), Error::DimensionMismatch { expected: 3, found: 2 });
    }
}
