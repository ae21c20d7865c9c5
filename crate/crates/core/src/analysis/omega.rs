//! Period detection and ω-limit set estimates.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::simplex::SimplexPoint;
use crate::tensor::CoefficientTensor;
use crate::trajectory::Trajectory;

pub const DEFAULT_PERIOD_TOL: f64 = 1e-9;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;
/// Largest period searched by [`omega_estimate`].
pub const OMEGA_MAX_PERIOD: usize = 50;

/// Smallest `s ≤ s_max` such that every pair of tail points `s` steps apart is
/// closer than `tol`, over a window of the last `2·s_max` recorded points.
pub fn detect_period(traj: &Trajectory, s_max: usize, tol: f64) -> Result<Option<usize>> {
    if s_max == 0 {
        return Err(Error::InvalidArgument("s_max must be at least 1"));
    }
    let needed = 2 * s_max;
    if traj.stride != 1 || traj.len() < needed {
        return Err(Error::InsufficientTail { available: traj.len(), needed, stride: traj.stride });
    }
    let pts = traj.points();
    let tail: Vec<&SimplexPoint> = pts[pts.len() - needed..].iter().map(|(_, p)| p).collect();
    Ok(period_in(&tail, s_max, tol))
}

pub(crate) fn period_in(window: &[&SimplexPoint], s_max: usize, tol: f64) -> Option<usize> {
    (1..=s_max.min(window.len().saturating_sub(1))).find(|&s| {
        (0..window.len() - s).all(|i| window[i].sup_distance(window[i + s]) < tol)
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OmegaSet {
    /// Cluster representatives in order of first appearance along the orbit.
    pub cluster_points: Vec<SimplexPoint>,
    /// Number of window points assigned to each cluster.
    pub cluster_sizes: Vec<usize>,
    pub detected_period: Option<usize>,
    pub burn_in: usize,
    pub window: usize,
    pub cluster_tol: f64,
    pub period_tol: f64,
    /// Largest period searched.
    pub period_search_max: usize,
}

/// Iterates `burn_in` steps, then clusters the next `window` points by greedy
/// sup-norm linkage at `cluster_tol` and runs period detection on them.
///
/// Each cluster is represented by its most recent member.
pub fn omega_estimate(
    t: &CoefficientTensor,
    x0: &SimplexPoint,
    burn_in: usize,
    window: usize,
    cluster_tol: f64,
) -> Result<OmegaSet> {
    if burn_in == 0 || window == 0 {
        return Err(Error::InvalidArgument("burn-in and window must be at least 1"));
    }
    if x0.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: x0.dim() });
    }
    let mut x = x0.clone();
    for _ in 0..burn_in {
        x = t.apply(&x)?;
    }
    let mut tail = Vec::with_capacity(window);
    for _ in 0..window {
        x = t.apply(&x)?;
        tail.push(x.clone());
    }

    let mut reps: Vec<SimplexPoint> = Vec::new();
    let mut sizes: Vec<usize> = Vec::new();
    for p in &tail {
        match reps.iter().position(|r| r.sup_distance(p) < cluster_tol) {
            Some(i) => {
                reps[i] = p.clone();
                sizes[i] += 1;
            }
            None => {
                reps.push(p.clone());
                sizes.push(1);
            }
        }
    }
    // Representatives drift as members are replaced; merge any that ended up close.
    let mut i = 0;
    while i < reps.len() {
        let mut j = i + 1;
        while j < reps.len() {
            if reps[i].sup_distance(&reps[j]) < cluster_tol {
                sizes[i] += sizes[j];
                reps.remove(j);
                sizes.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }

    let s_max = OMEGA_MAX_PERIOD.min(window / 2);
    let detected_period = if s_max == 0 {
        None
    } else {
        let refs: Vec<&SimplexPoint> = tail[tail.len() - 2 * s_max..].iter().collect();
        period_in(&refs, s_max, DEFAULT_PERIOD_TOL)
    };
    Ok(OmegaSet {
        cluster_points: reps,
        cluster_sizes: sizes,
        detected_period,
        burn_in,
        window,
        cluster_tol,
        period_tol: DEFAULT_PERIOD_TOL,
        period_search_max: s_max,
    })
}

impl OmegaSet {
    /// Largest distance from `V(c_i)` to the nearest cluster point; small when
    /// the cluster set is invariant under the operator.
    pub fn invariance_defect(&self, t: &CoefficientTensor) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for c in &self.cluster_points {
            let img = t.apply(c)?;
            let d = self
                .cluster_points
                .iter()
                .map(|q| q.sup_distance(&img))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_quasi_strict, make_regular, make_s2, Family};
    use crate::permutation::parse_cycles;
    use crate::trajectory::iterate;

    #[test]
    fn constant_tail_has_period_one() {
        let t = make_regular(4).unwrap();
        let c = SimplexPoint::center(4).unwrap();
        let tr = iterate(&t, &c, 20, 1).unwrap();
        assert_eq!(detect_period(&tr, 5, DEFAULT_PERIOD_TOL).unwrap(), Some(1));
    }

    #[test]
    fn swap_orbit_has_period_two() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let t = make_quasi_strict(3, &pi).unwrap();
        let x = SimplexPoint::new(&[0.3, 0.2, 0.5]).unwrap();
        let tr = iterate(&t, &x, 40, 1).unwrap();
        assert_eq!(detect_period(&tr, 10, DEFAULT_PERIOD_TOL).unwrap(), Some(2));
        assert_eq!(detect_period(&tr, 1, DEFAULT_PERIOD_TOL).unwrap(), None);
    }

    #[test]
    fn short_or_strided_tail() {
        let t = make_regular(4).unwrap();
        let c = SimplexPoint::center(4).unwrap();
        let tr = iterate(&t, &c, 3, 1).unwrap();
        assert!(matches!(detect_period(&tr, 5, 1e-9), Err(Error::InsufficientTail { .. })));
        let tr = iterate(&t, &c, 40, 2).unwrap();
        assert!(matches!(detect_period(&tr, 5, 1e-9), Err(Error::InsufficientTail { .. })));
    }

    #[test]
    fn khukr_two_cycle() {
        let t = make_s2(Family::Khukr, None).unwrap();
        let x = SimplexPoint::new(&[0.4, 0.36, 0.24]).unwrap();
        let om = omega_estimate(&t, &x, 1000, 200, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(om.cluster_points.len(), 2);
        assert_eq!(om.detected_period, Some(2));
        let a = SimplexPoint::new(&[0.5, 0.3, 0.2]).unwrap();
        let b = SimplexPoint::new(&[0.5, 0.2, 0.3]).unwrap();
        for target in [a, b] {
            assert!(om.cluster_points.iter().any(|p| p.sup_distance(&target) < 1e-6));
        }
        assert!(om.invariance_defect(&t).unwrap() < 1e-8);
    }

    #[test]
    fn regular_single_cluster() {
        let t = make_regular(5).unwrap();
        let x = SimplexPoint::new(&[0.4, 0.3, 0.2, 0.05, 0.05]).unwrap();
        let om = omega_estimate(&t, &x, 500, 100, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(om.cluster_points.len(), 1);
        assert!(om.cluster_points[0].sup_distance(&SimplexPoint::center(5).unwrap()) < 1e-10);
    }
}
