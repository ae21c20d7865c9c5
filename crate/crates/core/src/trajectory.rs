//! Trajectories `x^(n+1) = V(x^(n))` and their Cesàro averages.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::simplex::SimplexPoint;
use crate::tensor::CoefficientTensor;

/// Recorded iterates of an operator, indexed by step number.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub label: String,
    pub stride: usize,
    points: Vec<(usize, SimplexPoint)>,
}

impl Trajectory {
    pub fn points(&self) -> &[(usize, SimplexPoint)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> &SimplexPoint {
        &self.points.last().expect("trajectory always holds x0").1
    }

    pub fn into_points(self) -> Vec<(usize, SimplexPoint)> {
        self.points
    }
}

/// Iterates `n_steps` times, recording `x^(0)`, every `stride`-th iterate, and
/// always the final iterate.
pub fn iterate(t: &CoefficientTensor, x0: &SimplexPoint, n_steps: usize, stride: usize) -> Result<Trajectory> {
    if stride == 0 {
        return Err(Error::InvalidArgument("stride must be at least 1"));
    }
    if x0.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: x0.dim() });
    }
    let mut points = Vec::with_capacity(n_steps / stride + 2);
    points.push((0, x0.clone()));
    let mut x = x0.clone();
    for n in 1..=n_steps {
        x = t.apply(&x)?;
        if n % stride == 0 || n == n_steps {
            points.push((n, x.clone()));
        }
    }
    Ok(Trajectory { label: alloc::format!("tensor(m={})", t.dim()), stride, points })
}

/// One checkpoint of a Cesàro scan.
#[derive(Debug, Clone, PartialEq)]
pub struct CesaroSample {
    /// Checkpoint `n`.
    pub n: usize,
    /// `A_n = (1/n) Σ_{k<n} x^(k)`.
    pub mean: SimplexPoint,
    /// The iterate `x^(n)`.
    pub current: SimplexPoint,
    /// Smallest coordinate seen over `x^(0), ..., x^(n)`.
    pub running_min: f64,
}

/// Cesàro means and trajectory diagnostics at strictly increasing checkpoints,
/// in a single pass with O(m) memory.
pub fn cesaro_scan(t: &CoefficientTensor, x0: &SimplexPoint, checkpoints: &[usize]) -> Result<Vec<CesaroSample>> {
    if x0.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: x0.dim() });
    }
    if checkpoints.first().is_some_and(|&n| n == 0) {
        return Err(Error::InvalidArgument("checkpoints must be positive"));
    }
    if checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("checkpoints must be strictly increasing"));
    }
    let m = t.dim();
    // Kahan-compensated running sum.
    let mut sum = alloc::vec![0.0; m];
    let mut comp = alloc::vec![0.0; m];
    let mut x = x0.coords().to_vec();
    let mut next = alloc::vec![0.0; m];
    let mut running_min = x0.min_coord();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut n = 0usize;
    for &target in checkpoints {
        while n < target {
            for k in 0..m {
                let y = x[k] - comp[k];
                let s = sum[k] + y;
                comp[k] = (s - sum[k]) - y;
                sum[k] = s;
            }
            t.evaluate_raw(&x, &mut next);
            let total: f64 = next.iter().sum();
            for (xi, &v) in x.iter_mut().zip(&next) {
                *xi = v.max(0.0) / total;
            }
            running_min = x.iter().copied().fold(running_min, f64::min);
            n += 1;
        }
        let mean = SimplexPoint::from_weights(sum.iter().map(|s| s / n as f64).collect());
        out.push(CesaroSample {
            n,
            mean,
            current: SimplexPoint::from_weights(x.clone()),
            running_min,
        });
    }
    Ok(out)
}

/// `A_n = (1/n) Σ_{k<n} V^k(x0)` at each checkpoint.
pub fn cesaro_means(t: &CoefficientTensor, x0: &SimplexPoint, checkpoints: &[usize]) -> Result<Vec<SimplexPoint>> {
    Ok(cesaro_scan(t, x0, checkpoints)?.into_iter().map(|s| s.mean).collect())
}
