//! Invariant-set membership checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::families::{Family, Operator};
use crate::sampling::Sampler;
use crate::simplex::SimplexPoint;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InvariantSet {
    /// `x_1 ⋯ x_{m−1} = 0`.
    M0,
    /// `∏_{τ_i} x_k = ω ∏_{τ_j} x_k` or the same with `1/ω`; cycle indices are 1-based.
    MOmega { i: usize, j: usize, omega: f64 },
    /// `x_1 = x_3`.
    VallanderDiag,
    /// `x_2 = τ x_3` or `x_2 = x_3 / τ`.
    KhukrMTau { tau: f64 },
}

impl InvariantSet {
    pub fn id(&self) -> String {
        match self {
            InvariantSet::M0 => "M0".into(),
            InvariantSet::MOmega { i, j, omega } => format!("M_OMEGA({i},{j},{omega})"),
            InvariantSet::VallanderDiag => "VALLANDER_DIAG".into(),
            InvariantSet::KhukrMTau { tau } => format!("KHUKR_M_TAU({tau})"),
        }
    }

    pub fn check_applicable(&self, op: &Operator) -> Result<()> {
        let fail = || Error::InapplicableSet { set: self.id(), operator: op.label() };
        let spec = op.spec.as_ref().ok_or_else(fail)?;
        let ok = match *self {
            InvariantSet::M0 => spec.family == Family::QuasiStrict,
            InvariantSet::MOmega { i, j, omega } => {
                spec.family == Family::QuasiStrict
                    && omega > 0.0
                    && omega.is_finite()
                    && i != j
                    && spec.permutation.as_ref().is_some_and(|p| (1..=p.cycle_count()).contains(&i) && (1..=p.cycle_count()).contains(&j))
            }
            InvariantSet::VallanderDiag => spec.family == Family::VallanderTheta,
            InvariantSet::KhukrMTau { tau } => spec.family == Family::Khukr && tau > 0.0 && tau.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(fail())
        }
    }

    /// Membership defect; zero exactly on the set.
    ///
    /// For `M_OMEGA` this is the distance of `ln(P_i/P_j)` to `±ln ω`, and for
    /// `KHUKR_M_TAU` the smaller of `|x_2 − τx_3|` and `|x_3 − τx_2|`.
    pub fn defect(&self, op: &Operator, x: &[f64]) -> f64 {
        match *self {
            InvariantSet::M0 => x[..x.len() - 1].iter().product::<f64>().abs(),
            InvariantSet::MOmega { i, j, omega } => {
                let (pi, pj) = (cycle_product(op, i, x), cycle_product(op, j, x));
                if pi == 0.0 && pj == 0.0 {
                    return 0.0;
                }
                let lr = libm::log(pi) - libm::log(pj);
                let lw = libm::log(omega);
                (lr - lw).abs().min((lr + lw).abs())
            }
            InvariantSet::VallanderDiag => (x[0] - x[2]).abs(),
            InvariantSet::KhukrMTau { tau } => (x[1] - tau * x[2]).abs().min((x[2] - tau * x[1]).abs()),
        }
    }

    fn sample(&self, op: &Operator, rng: &mut Sampler) -> SimplexPoint {
        let m = op.dim();
        match *self {
            InvariantSet::M0 => {
                let mut w = rng.interior_point(m).into_coords();
                w[rng.index(m - 1)] = 0.0;
                SimplexPoint::from_weights(w)
            }
            InvariantSet::MOmega { i, j, omega } => {
                let target = if rng.uniform() < 0.5 { omega } else { 1.0 / omega };
                sample_ratio(op, i, j, target, rng)
            }
            InvariantSet::VallanderDiag => {
                let a = 0.5 * rng.open_uniform();
                SimplexPoint::from_weights(alloc::vec![a, 1.0 - 2.0 * a, a])
            }
            InvariantSet::KhukrMTau { tau } => {
                let x1 = rng.open_uniform();
                let x3 = (1.0 - x1) / (1.0 + tau);
                let x2 = 1.0 - x1 - x3;
                if rng.uniform() < 0.5 {
                    SimplexPoint::from_weights(alloc::vec![x1, x2, x3])
                } else {
                    SimplexPoint::from_weights(alloc::vec![x1, x3, x2])
                }
            }
        }
    }
}

fn cycle_product(op: &Operator, l: usize, x: &[f64]) -> f64 {
    let p = op.spec.as_ref().and_then(|s| s.permutation.as_ref()).expect("checked applicable");
    p.cycle0(l - 1).iter().map(|&k| x[k]).product()
}

/// Interior point with `P_i / P_j = target`, found by scaling the coordinates of
/// cycle `i` by `c` and renormalizing; `ln(P_i/P_j)` is increasing in `ln c`.
fn sample_ratio(op: &Operator, i: usize, j: usize, target: f64, rng: &mut Sampler) -> SimplexPoint {
    let base = rng.interior_point(op.dim()).into_coords();
    let cyc: Vec<usize> = op.spec.as_ref().unwrap().permutation.as_ref().unwrap().cycle0(i - 1).to_vec();
    let scaled = |log_c: f64| {
        let c = libm::exp(log_c);
        let mut w = base.clone();
        for &k in &cyc {
            w[k] *= c;
        }
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        w
    };
    let g = |log_c: f64| {
        let w = scaled(log_c);
        libm::log(cycle_product(op, i, &w)) - libm::log(cycle_product(op, j, &w)) - libm::log(target)
    };
    let (mut lo, mut hi) = (-40.0, 40.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    SimplexPoint::from_weights(scaled(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSetReport {
    pub set: String,
    pub samples: usize,
    pub horizon: usize,
    /// Largest defect among the sampled starting points.
    pub initial_defect: f64,
    /// Largest defect seen along all trajectories.
    pub max_defect: f64,
    pub worst_start: Option<SimplexPoint>,
}

/// Samples points of the set, iterates each `horizon` steps and reports the
/// largest membership defect observed.
pub fn check_invariant_set(op: &Operator, set: &InvariantSet, samples: usize, horizon: usize, seed: u64) -> Result<InvariantSetReport> {
    set.check_applicable(op)?;
    let mut rng = Sampler::new(seed);
    let mut report = InvariantSetReport {
        set: set.id(),
        samples,
        horizon,
        initial_defect: 0.0,
        max_defect: 0.0,
        worst_start: None,
    };
    for _ in 0..samples {
        let start = set.sample(op, &mut rng);
        report.initial_defect = report.initial_defect.max(set.defect(op, start.coords()));
        let mut x = start.clone();
        for _ in 0..horizon {
            x = op.apply(&x)?;
            let d = set.defect(op, x.coords());
            if d > report.max_defect || (d.is_nan() && !report.max_defect.is_nan()) {
                report.max_defect = d;
                report.worst_start = Some(start.clone());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::permutation::parse_cycles;

    #[test]
    fn m0_is_exactly_invariant() {
        let pi = parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        let op = Operator::from_spec(FamilySpec::quasi_strict(6, pi).unwrap()).unwrap();
        let r = check_invariant_set(&op, &InvariantSet::M0, 100, 50, 1).unwrap();
        assert_eq!(r.max_defect, 0.0);
    }

    #[test]
    fn khukr_m_tau() {
        let op = Operator::from_spec(FamilySpec::s2(Family::Khukr, None).unwrap()).unwrap();
        let r = check_invariant_set(&op, &InvariantSet::KhukrMTau { tau: 1.5 }, 100, 50, 2).unwrap();
        assert!(r.initial_defect < 1e-12);
        assert!(r.max_defect < 1e-9);
    }

    #[test]
    fn m_omega_equal_orders() {
        let pi = parse_cycles("(1 2)(3 4)", 4).unwrap();
        let op = Operator::from_spec(FamilySpec::quasi_strict(5, pi).unwrap()).unwrap();
        let set = InvariantSet::MOmega { i: 1, j: 2, omega: 2.0 };
        let r = check_invariant_set(&op, &set, 100, 50, 3).unwrap();
        assert!(r.initial_defect < 1e-12);
        assert!(r.max_defect < 1e-9);
    }

    #[test]
    fn m_omega_unequal_orders_drifts() {
        let pi = parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        let op = Operator::from_spec(FamilySpec::quasi_strict(6, pi).unwrap()).unwrap();
        let set = InvariantSet::MOmega { i: 1, j: 2, omega: 2.0 };
        let r = check_invariant_set(&op, &set, 20, 20, 3).unwrap();
        assert!(r.initial_defect < 1e-12);
        assert!(r.max_defect > 1e-6);
    }

    #[test]
    fn vallander_diagonal() {
        let op = Operator::from_spec(FamilySpec::s2(Family::VallanderTheta, Some(0.3)).unwrap()).unwrap();
        let r = check_invariant_set(&op, &InvariantSet::VallanderDiag, 50, 50, 4).unwrap();
        assert!(r.max_defect < 1e-14);
        let other = Operator::from_spec(FamilySpec::regular(4).unwrap()).unwrap();
        assert!(matches!(
            check_invariant_set(&other, &InvariantSet::VallanderDiag, 1, 1, 0),
            Err(Error::InapplicableSet { .. })
        ));
    }
}
