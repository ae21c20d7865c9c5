//! Numerical probes: block contraction, Cesàro fluctuation, the ψ product
//! bound and the max-norm decrease.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::{make_alpha_combination, make_regular};
use crate::permutation::Permutation;
use crate::sampling::Sampler;
use crate::simplex::SimplexPoint;
use crate::tensor::CoefficientTensor;
use crate::trajectory::{cesaro_scan, CesaroSample};

/// Steps allowed before a trajectory must reach `x_m < ½`.
pub const ENTRY_CAP: usize = 10_000;
/// Differences below this are at rounding level; block measurement stops there.
pub const CONTRACTION_FLOOR: f64 = 1e-10;
/// Largest number of steps examined after entry.
pub const CONTRACTION_STEP_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub s: u64,
    /// `1 − α + α^s`.
    pub bound: f64,
    /// True when `s = 1`, where the bound equals 1.
    pub vacuous: bool,
    /// First step with `x_m < ½`.
    pub entry_step: usize,
    pub blocks_checked: usize,
    /// Worst ratio of `max_{u<v<m} |x_u − x_v|` across an `s`-block.
    pub worst_factor: f64,
    /// Worst ratio for a single pair `(u, v)`; informational.
    pub worst_pair_ratio: f64,
    pub tol: f64,
    pub within_bound: bool,
}

fn spread(x: &[f64]) -> f64 {
    let head = &x[..x.len() - 1];
    let hi = head.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = head.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

/// Measures how the spread of the first `m − 1` coordinates of
/// `α·REGULAR + (1−α)·QUASI_STRICT` shrinks over blocks of `s = ord(π)` steps
/// once the trajectory is inside `{x_m < ½}`.
///
/// A block starting at step `n` is counted only when all of `x^(n), ..., x^(n+s−1)`
/// lie in the region. Measurement stops once the spread falls below
/// [`CONTRACTION_FLOOR`].
pub fn contraction_report(m: usize, pi: &Permutation, alpha: f64, x0: &SimplexPoint, tol: f64) -> Result<ContractionReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument("alpha must lie in (0, 1)"));
    }
    if !x0.is_interior(0.0) {
        return Err(Error::InvalidArgument("start must be an interior point"));
    }
    let t = make_alpha_combination(m, pi, alpha)?;
    if x0.dim() != m {
        return Err(Error::DimensionMismatch { expected: m, found: x0.dim() });
    }
    let s = pi.order();
    let bound = 1.0 - alpha + libm::pow(alpha, s as f64);

    let mut x = x0.clone();
    let mut entry = None;
    for n in 0..=ENTRY_CAP {
        if x.last() < 0.5 {
            entry = Some(n);
            break;
        }
        x = t.apply(&x)?;
    }
    let entry_step = entry.ok_or(Error::NeverEntersRegion { steps: ENTRY_CAP })?;

    let sl = s as usize;
    let mut path: Vec<Vec<f64>> = alloc::vec![x.coords().to_vec()];
    let mut worst_factor: f64 = 0.0;
    let mut worst_pair: f64 = 0.0;
    let mut blocks = 0;
    let mut steps = 0;
    'blocks: while steps < CONTRACTION_STEP_CAP {
        let start = path.last().unwrap().clone();
        if spread(&start) < CONTRACTION_FLOOR {
            break;
        }
        let mut block = alloc::vec![start.clone()];
        for _ in 0..sl {
            x = t.apply(&x)?;
            steps += 1;
            block.push(x.coords().to_vec());
        }
        path.clear();
        path.push(block[sl].clone());
        if block[..sl].iter().any(|p| p[m - 1] >= 0.5) {
            continue 'blocks;
        }
        let end = &block[sl];
        blocks += 1;
        worst_factor = worst_factor.max(spread(end) / spread(&start));
        for u in 0..m - 1 {
            for v in u + 1..m - 1 {
                let d0 = (start[u] - start[v]).abs();
                if d0 > CONTRACTION_FLOOR {
                    worst_pair = worst_pair.max((end[u] - end[v]).abs() / d0);
                }
            }
        }
    }
    Ok(ContractionReport {
        s,
        bound,
        vacuous: s == 1,
        entry_step,
        blocks_checked: blocks,
        worst_factor,
        worst_pair_ratio: worst_pair,
        tol,
        within_bound: worst_factor <= bound + tol,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErgodicityReport {
    pub checkpoints: Vec<usize>,
    pub samples: Vec<CesaroSample>,
    /// Largest sup-norm difference between Cesàro means at any two checkpoints.
    pub fluctuation: f64,
    /// `(a, b, ‖A_a − A_b‖∞)` for every pair of checkpoints.
    pub pairwise: Vec<(usize, usize, f64)>,
}

/// Largest checkpoint accepted by [`ergodicity_probe`].
pub const ERGODICITY_MAX_STEPS: usize = 10_000_000;

pub fn ergodicity_probe(t: &CoefficientTensor, x0: &SimplexPoint, checkpoints: &[usize]) -> Result<ErgodicityReport> {
    if checkpoints.last().is_some_and(|&n| n > ERGODICITY_MAX_STEPS) {
        return Err(Error::InvalidArgument("checkpoints beyond 10^7 steps"));
    }
    let samples = cesaro_scan(t, x0, checkpoints)?;
    let mut pairwise = Vec::new();
    let mut fluctuation: f64 = 0.0;
    for a in 0..samples.len() {
        for b in a + 1..samples.len() {
            let d = samples[a].mean.sup_distance(&samples[b].mean);
            fluctuation = fluctuation.max(d);
            pairwise.push((samples[a].n, samples[b].n, d));
        }
    }
    Ok(ErgodicityReport { checkpoints: checkpoints.to_vec(), samples, fluctuation, pairwise })
}

/// `ψ(x) = ∏_i (2 + (m−4)(x_i + x_{i+1})) / (m−2)^m` with cyclic indices.
pub fn psi(x: &[f64]) -> f64 {
    let m = x.len();
    let mf = m as f64;
    let mut prod = 1.0;
    for i in 0..m {
        prod *= (2.0 + (mf - 4.0) * (x[i] + x[(i + 1) % m])) / (mf - 2.0);
    }
    prod
}

/// Exact one-step multiplier of `|x_1−x_2|⋯|x_m−x_1|` under the regular operator:
/// `∏_i |m(x_i + x_{i+1}) − 2| / (m−2)^m`.
pub fn cyclic_product_multiplier(x: &[f64]) -> f64 {
    let m = x.len();
    let mf = m as f64;
    let mut prod = 1.0;
    for i in 0..m {
        prod *= (mf * (x[i] + x[(i + 1) % m]) - 2.0).abs() / (mf - 2.0);
    }
    prod
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsiReport {
    pub m: usize,
    /// `(4/m)^m`.
    pub bound: f64,
    pub samples: usize,
    pub max_psi: f64,
    pub worst_point: Option<SimplexPoint>,
    pub violations: usize,
    pub psi_at_center: f64,
    /// `|ψ(c) − (4/m)^m|`.
    pub center_gap: f64,
}

/// Slack on the ψ bound.
pub const PSI_SLACK: f64 = 1e-12;

pub fn psi_bound_check(m: usize, samples: usize, seed: u64) -> Result<PsiReport> {
    if m < 5 {
        return Err(Error::DimensionTooSmall { m, min: 5 });
    }
    let bound = libm::pow(4.0 / m as f64, m as f64);
    let mut rng = Sampler::new(seed);
    let mut max_psi = f64::NEG_INFINITY;
    let mut worst = None;
    let mut violations = 0;
    for _ in 0..samples {
        let x = rng.interior_point(m);
        let v = psi(x.coords());
        if v > bound + PSI_SLACK {
            violations += 1;
        }
        if v > max_psi {
            max_psi = v;
            worst = Some(x);
        }
    }
    let c = SimplexPoint::center(m)?;
    let at_c = psi(c.coords());
    Ok(PsiReport {
        m,
        bound,
        samples,
        max_psi,
        worst_point: worst,
        violations,
        psi_at_center: at_c,
        center_gap: (at_c - bound).abs(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxNormReport {
    pub samples: usize,
    /// Samples with `max_k x'_k ≥ max_k x_k`.
    pub violations: usize,
    /// Smallest `max x − max x'` over the samples.
    pub min_margin: f64,
    pub worst_point: Option<SimplexPoint>,
}

/// Distance below which a sample counts as one of the five fixed points of the
/// `m = 4` regular operator and is skipped.
pub const MAX_NORM_EXCLUSION: f64 = 1e-9;

/// Checks `max_k V(x)_k < max_k x_k` for the `m = 4` regular operator at seeded
/// interior points away from its fixed points.
pub fn max_norm_check(samples: usize, seed: u64) -> Result<MaxNormReport> {
    let t = make_regular(4)?;
    let c = SimplexPoint::center(4)?;
    let mut rng = Sampler::new(seed);
    let mut report = MaxNormReport { samples: 0, violations: 0, min_margin: f64::INFINITY, worst_point: None };
    while report.samples < samples {
        let x = rng.interior_point(4);
        if x.sup_distance(&c) < MAX_NORM_EXCLUSION || x.max_coord() > 1.0 - MAX_NORM_EXCLUSION {
            continue;
        }
        report.samples += 1;
        let margin = x.max_coord() - t.apply(&x)?.max_coord();
        if !(margin > 0.0) {
            report.violations += 1;
        }
        if margin < report.min_margin {
            report.min_margin = margin;
            report.worst_point = Some(x);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_s2;
    use crate::families::Family;
    use crate::permutation::parse_cycles;

    #[test]
    fn psi_equality_at_center() {
        for m in [5, 8] {
            let r = psi_bound_check(m, 1000, 1).unwrap();
            assert_eq!(r.violations, 0);
            assert!(r.center_gap < 1e-12);
        }
        assert!(psi_bound_check(4, 1, 1).is_err());
    }

    #[test]
    fn multiplier_is_exact() {
        let t = make_regular(6).unwrap();
        let x = SimplexPoint::new(&[0.3, 0.1, 0.25, 0.05, 0.2, 0.1]).unwrap();
        let phi = |p: &[f64]| (0..6).map(|i| (p[i] - p[(i + 1) % 6]).abs()).product::<f64>();
        let y = t.apply(&x).unwrap();
        let lhs = phi(y.coords());
        let rhs = phi(x.coords()) * cyclic_product_multiplier(x.coords());
        assert!((lhs - rhs).abs() < 1e-15);
    }

    #[test]
    fn max_norm_examples() {
        let t = make_regular(4).unwrap();
        let x = SimplexPoint::new(&[0.7, 0.1, 0.1, 0.1]).unwrap();
        assert!(t.apply(&x).unwrap().max_coord() < 0.7);
        let r = max_norm_check(1000, 5).unwrap();
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn contraction_small_case() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let x0 = SimplexPoint::new(&[0.5, 0.2, 0.3]).unwrap();
        let r = contraction_report(3, &pi, 0.5, &x0, 1e-9).unwrap();
        assert_eq!(r.s, 2);
        assert!((r.bound - 0.75).abs() < 1e-15);
        assert!(r.blocks_checked > 0);
        assert!(r.within_bound, "{r:?}");
    }

    #[test]
    fn contraction_identity_is_vacuous() {
        let pi = Permutation::identity(3);
        let x0 = SimplexPoint::new(&[0.5, 0.2, 0.2, 0.1]).unwrap();
        let r = contraction_report(4, &pi, 0.6, &x0, 1e-9).unwrap();
        assert!(r.vacuous);
        assert_eq!(r.bound, 1.0);
    }

    #[test]
    fn ergodicity_at_fixed_point() {
        let t = make_s2(Family::Zakharevich, None).unwrap();
        let c = SimplexPoint::center(3).unwrap();
        let r = ergodicity_probe(&t, &c, &[10, 100, 1000]).unwrap();
        assert!(r.fluctuation < 1e-15);
        assert_eq!(r.pairwise.len(), 3);
    }
}
