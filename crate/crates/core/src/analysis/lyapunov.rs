//! Lyapunov functions and numerical monotonicity checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::families::{Family, Operator};
use crate::sampling::Sampler;
use crate::simplex::SimplexPoint;

/// Slack allowed before a step counts as a violation.
pub const LYAPUNOV_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    NonIncreasing,
    NonDecreasing,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::NonIncreasing => "NON_INCREASING",
            Direction::NonDecreasing => "NON_DECREASING",
        }
    }
}

/// Catalog of Lyapunov candidates. Cycle indices `l` are 1-based positions in
/// the canonical cycle list of the permutation (fixed points included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LyapunovFn {
    /// `|x_1 − x_2||x_2 − x_3|⋯|x_m − x_1|`.
    CyclicProduct,
    /// `∏_{k∈τ_l} x_k`.
    CycleProduct(usize),
    /// `Σ_{k∈τ_l} x_k`.
    CycleSum(usize),
    /// `x_m`.
    LastCoord,
    /// `|x_1 − x_2||x_2 − x_3||x_3 − x_1|`.
    AbsDiffProduct,
    /// `x_1 x_2 x_3`.
    CoordProduct,
}

impl LyapunovFn {
    pub fn id(&self) -> String {
        match self {
            LyapunovFn::CyclicProduct => "CYCLIC_PRODUCT".into(),
            LyapunovFn::CycleProduct(l) => format!("CYCLE_PRODUCT({l})"),
            LyapunovFn::CycleSum(l) => format!("CYCLE_SUM({l})"),
            LyapunovFn::LastCoord => "LAST_COORD".into(),
            LyapunovFn::AbsDiffProduct => "ABS_DIFF_PRODUCT".into(),
            LyapunovFn::CoordProduct => "COORD_PRODUCT".into(),
        }
    }

    /// Parses `CYCLIC_PRODUCT`, `CYCLE_SUM(2)` and so on.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().to_ascii_uppercase();
        let indexed = |prefix: &str| -> Option<Result<usize>> {
            let rest = t.strip_prefix(prefix)?;
            let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
            Some(
                inner
                    .and_then(|s| s.trim().parse::<usize>().ok())
                    .filter(|&l| l >= 1)
                    .ok_or(Error::InvalidArgument("cycle index must be written as NAME(l) with l >= 1")),
            )
        };
        if let Some(l) = indexed("CYCLE_PRODUCT") {
            return Ok(LyapunovFn::CycleProduct(l?));
        }
        if let Some(l) = indexed("CYCLE_SUM") {
            return Ok(LyapunovFn::CycleSum(l?));
        }
        match t.as_str() {
            "CYCLIC_PRODUCT" => Ok(LyapunovFn::CyclicProduct),
            "LAST_COORD" => Ok(LyapunovFn::LastCoord),
            "ABS_DIFF_PRODUCT" => Ok(LyapunovFn::AbsDiffProduct),
            "COORD_PRODUCT" => Ok(LyapunovFn::CoordProduct),
            _ => Err(Error::InvalidArgument("unknown Lyapunov function")),
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            LyapunovFn::CycleProduct(_) | LyapunovFn::CycleSum(_) => Direction::NonDecreasing,
            _ => Direction::NonIncreasing,
        }
    }

    /// First iterate from which monotonicity is checked.
    pub fn start_offset(&self) -> usize {
        match self {
            LyapunovFn::CycleProduct(_) | LyapunovFn::CycleSum(_) | LyapunovFn::LastCoord => 1,
            _ => 0,
        }
    }

    /// Checks the applicability table against the operator's family.
    pub fn check_applicable(&self, op: &Operator) -> Result<()> {
        let inapplicable = || Error::InapplicableFunction { function: self.id(), operator: op.label() };
        let spec = op.spec.as_ref().ok_or_else(inapplicable)?;
        let ok = match self {
            LyapunovFn::CyclicProduct => spec.family == Family::Regular && spec.m >= 4,
            LyapunovFn::CycleProduct(l) | LyapunovFn::CycleSum(l) => {
                spec.family == Family::QuasiStrict
                    && spec.permutation.as_ref().is_some_and(|p| *l >= 1 && *l <= p.cycle_count())
            }
            LyapunovFn::LastCoord => spec.family == Family::AlphaCombination,
            LyapunovFn::AbsDiffProduct => {
                matches!(spec.family, Family::GsnAlpha | Family::JjphTheta) && spec.parameter == Some(0.5)
            }
            LyapunovFn::CoordProduct => spec.family == Family::VallanderSpiral && spec.parameter != Some(0.5),
        };
        if ok {
            Ok(())
        } else {
            Err(inapplicable())
        }
    }

    /// Evaluates the function; `op` supplies the permutation for cycle functions.
    pub fn evaluate(&self, op: &Operator, x: &[f64]) -> Result<f64> {
        let m = x.len();
        if m != op.dim() {
            return Err(Error::DimensionMismatch { expected: op.dim(), found: m });
        }
        Ok(match self {
            LyapunovFn::CyclicProduct => (0..m).map(|i| (x[i] - x[(i + 1) % m]).abs()).product(),
            LyapunovFn::CycleProduct(l) => cycle_of(op, *l)?.iter().map(|&k| x[k]).product(),
            LyapunovFn::CycleSum(l) => cycle_of(op, *l)?.iter().map(|&k| x[k]).sum(),
            LyapunovFn::LastCoord => x[m - 1],
            LyapunovFn::AbsDiffProduct => {
                require_s2(m)?;
                (x[0] - x[1]).abs() * (x[1] - x[2]).abs() * (x[2] - x[0]).abs()
            }
            LyapunovFn::CoordProduct => {
                require_s2(m)?;
                x[0] * x[1] * x[2]
            }
        })
    }
}

impl fmt::Display for LyapunovFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

fn require_s2(m: usize) -> Result<()> {
    if m == 3 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: 3, found: m })
    }
}

fn cycle_of(op: &Operator, l: usize) -> Result<&[usize]> {
    let p = op
        .spec
        .as_ref()
        .and_then(|s| s.permutation.as_ref())
        .ok_or(Error::InvalidArgument("cycle functions need a permutation"))?;
    if l == 0 || l > p.cycle_count() {
        return Err(Error::IndexOutOfRange { index: l, len: p.cycle_count() });
    }
    Ok(p.cycle0(l - 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovReport {
    pub function: String,
    pub direction: Direction,
    pub start_offset: usize,
    pub samples: usize,
    pub horizon: usize,
    /// Number of consecutive-step comparisons made.
    pub checks: usize,
    pub violations: usize,
    /// Largest step against the declared direction, 0 if none.
    pub worst_violation: f64,
    pub worst_start: Option<SimplexPoint>,
    pub worst_step: Option<usize>,
}

/// Follows `samples` seeded interior trajectories for `horizon` steps and counts
/// steps `n ≥ n₀` where the function moves against its direction by more than
/// [`LYAPUNOV_SLACK`].
pub fn check_lyapunov(op: &Operator, f: &LyapunovFn, samples: usize, horizon: usize, seed: u64) -> Result<LyapunovReport> {
    f.check_applicable(op)?;
    let n0 = f.start_offset();
    let dir = f.direction();
    let mut sampler = Sampler::new(seed);
    let mut report = LyapunovReport {
        function: f.id(),
        direction: dir,
        start_offset: n0,
        samples,
        horizon,
        checks: 0,
        violations: 0,
        worst_violation: 0.0,
        worst_start: None,
        worst_step: None,
    };
    for _ in 0..samples {
        let start = sampler.interior_point(op.dim());
        let mut x = start.clone();
        let mut prev = f.evaluate(op, x.coords())?;
        for n in 0..horizon {
            x = op.apply(&x)?;
            let cur = f.evaluate(op, x.coords())?;
            if n >= n0 {
                report.checks += 1;
                let excess = match dir {
                    Direction::NonIncreasing => cur - prev,
                    Direction::NonDecreasing => prev - cur,
                };
                if excess > LYAPUNOV_SLACK {
                    report.violations += 1;
                }
                if excess > report.worst_violation {
                    report.worst_violation = excess;
                    report.worst_start = Some(start.clone());
                    report.worst_step = Some(n);
                }
            }
            prev = cur;
        }
    }
    Ok(report)
}

/// The documented applicability table: functions paired with the operators they apply to.
pub fn catalog_for(op: &Operator) -> Vec<LyapunovFn> {
    let mut out = Vec::new();
    let cycles = op.spec.as_ref().and_then(|s| s.permutation.as_ref()).map_or(0, |p| p.cycle_count());
    let mut candidates = alloc::vec![
        LyapunovFn::CyclicProduct,
        LyapunovFn::LastCoord,
        LyapunovFn::AbsDiffProduct,
        LyapunovFn::CoordProduct,
    ];
    for l in 1..=cycles {
        candidates.push(LyapunovFn::CycleProduct(l));
        candidates.push(LyapunovFn::CycleSum(l));
    }
    for f in candidates {
        if f.check_applicable(op).is_ok() {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use crate::permutation::parse_cycles;

    fn op(spec: FamilySpec) -> Operator {
        Operator::from_spec(spec).unwrap()
    }

    #[test]
    fn parse_ids() {
        for f in [
            LyapunovFn::CyclicProduct,
            LyapunovFn::CycleProduct(2),
            LyapunovFn::CycleSum(1),
            LyapunovFn::LastCoord,
            LyapunovFn::AbsDiffProduct,
            LyapunovFn::CoordProduct,
        ] {
            assert_eq!(LyapunovFn::parse(&f.id()).unwrap(), f);
        }
        assert!(LyapunovFn::parse("CYCLE_SUM(0)").is_err());
        assert!(LyapunovFn::parse("NOPE").is_err());
    }

    #[test]
    fn cyclic_product_on_regular() {
        let r = check_lyapunov(&op(FamilySpec::regular(6).unwrap()), &LyapunovFn::CyclicProduct, 100, 100, 1).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.checks, 100 * 100);
    }

    #[test]
    fn cycle_functions_on_quasi_strict() {
        let pi = parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        let o = op(FamilySpec::quasi_strict(6, pi).unwrap());
        assert_eq!(catalog_for(&o).len(), 4);
        for f in catalog_for(&o) {
            let r = check_lyapunov(&o, &f, 50, 100, 2).unwrap();
            assert_eq!(r.violations, 0, "{}", f);
        }
    }

    #[test]
    fn s2_functions() {
        let gsn = op(FamilySpec::s2(Family::GsnAlpha, Some(0.5)).unwrap());
        assert_eq!(check_lyapunov(&gsn, &LyapunovFn::AbsDiffProduct, 50, 100, 3).unwrap().violations, 0);
        let jjph = op(FamilySpec::s2(Family::JjphTheta, Some(0.5)).unwrap());
        assert_eq!(check_lyapunov(&jjph, &LyapunovFn::AbsDiffProduct, 50, 100, 3).unwrap().violations, 0);
        let spiral = op(FamilySpec::s2(Family::VallanderSpiral, Some(0.3)).unwrap());
        assert_eq!(check_lyapunov(&spiral, &LyapunovFn::CoordProduct, 50, 100, 3).unwrap().violations, 0);
    }

    #[test]
    fn inapplicable() {
        let o = op(FamilySpec::regular(3).unwrap());
        assert!(matches!(
            check_lyapunov(&o, &LyapunovFn::CyclicProduct, 1, 1, 0),
            Err(Error::InapplicableFunction { .. })
        ));
        let spiral = op(FamilySpec::s2(Family::VallanderSpiral, Some(0.5)).unwrap());
        assert!(LyapunovFn::CoordProduct.check_applicable(&spiral).is_err());
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let q = op(FamilySpec::quasi_strict(3, pi).unwrap());
        assert!(LyapunovFn::CycleSum(2).check_applicable(&q).is_err());
        assert!(LyapunovFn::CycleSum(1).check_applicable(&q).is_ok());
    }
}
