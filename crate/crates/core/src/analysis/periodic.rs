//! Search for solutions of `V_π^n(x) = x`.

use alloc::vec::Vec;
use core::fmt;

use super::fixed_points::{merge_point, residual};
use super::solver::{solve_fixed, structured_starts, PowerMap, SimplexMap};
use crate::error::Result;
use crate::families::make_quasi_strict;
use crate::permutation::Permutation;
use crate::sampling::Sampler;
use crate::simplex::{lex_cmp, sup_distance, SimplexPoint};

/// Tolerance used to sort solutions into kinds.
pub const KIND_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    FixedPoint,
    /// `x_m = ½` and `V^s(x) = x`.
    PeriodDividingS,
    Counterexample,
}

impl SolutionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolutionKind::FixedPoint => "FIXED_POINT",
            SolutionKind::PeriodDividingS => "PERIOD_DIVIDING_S",
            SolutionKind::Counterexample => "COUNTEREXAMPLE",
        }
    }
}

impl fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSolution {
    pub point: SimplexPoint,
    /// `‖V^n(x) − x‖∞`.
    pub residual: f64,
    pub kind: SolutionKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSearchReport {
    pub n: usize,
    pub s: u64,
    pub starts: usize,
    pub failed_starts: usize,
    pub solutions: Vec<PeriodicSolution>,
    pub counterexamples: Vec<SimplexPoint>,
}

/// Multistart solve of `V_π^n(x) = x` from the vertices, the center, edge
/// midpoints and `random_starts` seeded interior points. Each distinct solution
/// is labelled a fixed point, a point with `x_m = ½` whose period divides `s`,
/// or a counterexample.
pub fn periodic_absence_search(
    m: usize,
    pi: &Permutation,
    n: usize,
    random_starts: usize,
    tol: f64,
    seed: u64,
) -> Result<PeriodicSearchReport> {
    if n == 0 {
        return Err(crate::Error::InvalidArgument("n must be at least 1"));
    }
    let t = make_quasi_strict(m, pi)?;
    let s = pi.order();
    let power = PowerMap { tensor: &t, n };
    let s_power = PowerMap { tensor: &t, n: s as usize };
    let mut starts = structured_starts(m);
    let mut rng = Sampler::new(seed);
    for _ in 0..random_starts {
        starts.push(rng.interior_point(m).into_coords());
    }
    let res_n = |x: &[f64]| sup_distance(&power.value(x), x);
    let mut found: Vec<SimplexPoint> = Vec::new();
    let mut failed = 0;
    for start in &starts {
        match solve_fixed(&power, start, tol) {
            Some(sol) => merge_point(&mut found, SimplexPoint::from_weights(sol), |p| res_n(p.coords())),
            None => failed += 1,
        }
    }
    found.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
    let mut solutions = Vec::new();
    let mut counterexamples = Vec::new();
    for p in found {
        let kind = if residual(&t, &p)? < KIND_TOL {
            SolutionKind::FixedPoint
        } else if (p.last() - 0.5).abs() < KIND_TOL && sup_distance(&s_power.value(p.coords()), p.coords()) < KIND_TOL {
            SolutionKind::PeriodDividingS
        } else {
            counterexamples.push(p.clone());
            SolutionKind::Counterexample
        };
        solutions.push(PeriodicSolution { residual: res_n(p.coords()), point: p, kind });
    }
    Ok(PeriodicSearchReport { n, s, starts: starts.len(), failed_starts: failed, solutions, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::parse_cycles;

    #[test]
    fn no_period_three_for_transposition() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let r = periodic_absence_search(3, &pi, 3, 30, 1e-12, 1).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(!r.solutions.is_empty());
    }

    #[test]
    fn period_s_segment() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let r = periodic_absence_search(3, &pi, 2, 30, 1e-12, 2).unwrap();
        assert!(r.counterexamples.is_empty());
        let on_segment = r.solutions.iter().filter(|p| p.kind == SolutionKind::PeriodDividingS).count();
        assert!(on_segment > 3);
    }

    #[test]
    fn three_cycle_n_four() {
        let pi = parse_cycles("(1 2 3)", 3).unwrap();
        let r = periodic_absence_search(4, &pi, 4, 30, 1e-12, 3).unwrap();
        assert!(r.counterexamples.is_empty(), "{:?}", r.counterexamples);
    }
}
