//! Fixed points and their spectral classification.

use alloc::vec::Vec;
use core::fmt;

use super::solver::{damped_iteration, solve_fixed, structured_starts, PowerMap};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, restrict_to_tangent, Eigenvalue};
use crate::sampling::Sampler;
use crate::simplex::{lex_cmp, SimplexPoint, DEFAULT_ZERO_TOLERANCE};
use crate::tensor::CoefficientTensor;

/// Default half-width of the band around modulus 1 treated as non-hyperbolic.
pub const DEFAULT_BAND: f64 = 1e-6;
/// Largest residual accepted by [`classify_fixed_point`].
pub const FIXED_POINT_RESIDUAL: f64 = 1e-8;
/// Default solver tolerance on `‖V(x) − x‖∞`.
pub const DEFAULT_SOLVER_TOL: f64 = 1e-12;
/// Solutions closer than this are merged.
pub const DEDUP_RADIUS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Attracting,
    Repelling,
    Saddle,
    NonHyperbolic,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Attracting => "ATTRACTING",
            Classification::Repelling => "REPELLING",
            Classification::Saddle => "SADDLE",
            Classification::NonHyperbolic => "NON_HYPERBOLIC",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointReport {
    pub point: SimplexPoint,
    /// `‖V(x) − x‖∞` for the renormalized map.
    pub residual: f64,
    /// The `m − 1` eigenvalues of the Jacobian on the zero-sum hyperplane.
    pub tangent_eigenvalues: Vec<Eigenvalue>,
    /// The eigenvalue transversal to the simplex, always 2 (column sums).
    pub transversal_eigenvalue: f64,
    pub classification: Classification,
    /// True when some coordinate is at most the default zero tolerance.
    pub boundary: bool,
}

/// Classifies moduli against the band around 1.
pub fn classify_moduli(moduli: impl IntoIterator<Item = f64>, band: f64) -> Classification {
    let (mut below, mut above) = (false, false);
    for r in moduli {
        if (r - 1.0).abs() <= band {
            return Classification::NonHyperbolic;
        }
        if r < 1.0 {
            below = true;
        } else {
            above = true;
        }
    }
    match (below, above) {
        (true, false) | (false, false) => Classification::Attracting,
        (false, true) => Classification::Repelling,
        (true, true) => Classification::Saddle,
    }
}

/// Eigenvalues of the Jacobian restricted to the tangent space of the simplex.
pub fn tangent_spectrum(t: &CoefficientTensor, x: &SimplexPoint) -> Result<Vec<Eigenvalue>> {
    let jac = t.jacobian(x)?;
    eigenvalues(&restrict_to_tangent(&jac))
}

pub fn residual(t: &CoefficientTensor, x: &SimplexPoint) -> Result<f64> {
    Ok(t.apply(x)?.sup_distance(x))
}

/// Spectral classification of a fixed point on the tangent space.
pub fn classify_fixed_point(t: &CoefficientTensor, x: &SimplexPoint, band: f64) -> Result<FixedPointReport> {
    let res = residual(t, x)?;
    if !(res < FIXED_POINT_RESIDUAL) {
        return Err(Error::NotAFixedPoint { residual: res });
    }
    let spectrum = tangent_spectrum(t, x)?;
    let classification = classify_moduli(spectrum.iter().map(Eigenvalue::modulus), band);
    Ok(FixedPointReport {
        point: x.clone(),
        residual: res,
        tangent_eigenvalues: spectrum,
        transversal_eigenvalue: 2.0,
        classification,
        boundary: !x.is_interior(DEFAULT_ZERO_TOLERANCE),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSearch {
    /// Distinct fixed points in lexicographic coordinate order.
    pub reports: Vec<FixedPointReport>,
    pub starts_tried: usize,
    /// Starts from which neither the solver nor the damped fallback converged.
    pub failed_starts: usize,
}

/// Multistart search for fixed points of `t`.
///
/// Starts are the vertices, the center, every edge midpoint and
/// `random_starts` seeded interior points.
pub fn find_fixed_points(t: &CoefficientTensor, random_starts: usize, tol: f64, seed: u64) -> Result<FixedPointSearch> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let m = t.dim();
    let map = PowerMap { tensor: t, n: 1 };
    let mut starts = structured_starts(m);
    let mut sampler = Sampler::new(seed);
    for _ in 0..random_starts {
        starts.push(sampler.interior_point(m).into_coords());
    }
    let mut found: Vec<SimplexPoint> = Vec::new();
    let mut failed = 0;
    for start in &starts {
        let sol = solve_fixed(&map, start, tol).or_else(|| {
            let warm = damped_iteration(&map, start, 2000);
            solve_fixed(&map, &warm, tol)
        });
        let Some(sol) = sol else {
            failed += 1;
            continue;
        };
        let p = SimplexPoint::from_weights(sol);
        let res = residual(t, &p)?;
        if res >= FIXED_POINT_RESIDUAL {
            failed += 1;
            continue;
        }
        merge_point(&mut found, p, |q| residual(t, q).unwrap_or(f64::INFINITY));
    }
    found.sort_by(|a, b| lex_cmp(a.coords(), b.coords()));
    let reports = found
        .iter()
        .map(|p| classify_fixed_point(t, p, DEFAULT_BAND))
        .collect::<Result<Vec<_>>>()?;
    Ok(FixedPointSearch { reports, starts_tried: starts.len(), failed_starts: failed })
}

/// Inserts `p` unless a point within [`DEDUP_RADIUS`] exists; keeps the better-scored one.
pub(crate) fn merge_point(found: &mut Vec<SimplexPoint>, p: SimplexPoint, score: impl Fn(&SimplexPoint) -> f64) {
    if let Some(existing) = found.iter_mut().find(|q| q.sup_distance(&p) < DEDUP_RADIUS) {
        if score(&p) < score(existing) {
            *existing = p;
        }
    } else {
        found.push(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_alpha_combination, make_quasi_strict, make_regular};
    use crate::permutation::parse_cycles;

    fn moduli(r: &FixedPointReport) -> Vec<f64> {
        r.tangent_eigenvalues.iter().map(|e| e.modulus()).collect()
    }

    #[test]
    fn band_logic() {
        assert_eq!(classify_moduli([0.2, 0.5], 1e-6), Classification::Attracting);
        assert_eq!(classify_moduli([1.2, 3.0], 1e-6), Classification::Repelling);
        assert_eq!(classify_moduli([0.2, 3.0], 1e-6), Classification::Saddle);
        assert_eq!(classify_moduli([0.2, 1.0 + 1e-7], 1e-6), Classification::NonHyperbolic);
    }

    #[test]
    fn regular_center_is_superattracting() {
        for m in [4, 5, 7] {
            let t = make_regular(m).unwrap();
            let r = classify_fixed_point(&t, &SimplexPoint::center(m).unwrap(), DEFAULT_BAND).unwrap();
            assert_eq!(r.classification, Classification::Attracting);
            assert_eq!(r.tangent_eigenvalues.len(), m - 1);
            assert!(moduli(&r).iter().all(|&v| v < 1e-10));
        }
    }

    #[test]
    fn regular_vertex_spectrum() {
        // Tangent spectrum at a vertex: 2 once and −2/(m−2) with multiplicity m−2.
        let t = make_regular(4).unwrap();
        let r = classify_fixed_point(&t, &SimplexPoint::vertex(4, 2).unwrap(), DEFAULT_BAND).unwrap();
        assert_eq!(r.classification, Classification::NonHyperbolic);
        assert!(r.boundary);
        let t = make_regular(6).unwrap();
        let r = classify_fixed_point(&t, &SimplexPoint::vertex(6, 1).unwrap(), DEFAULT_BAND).unwrap();
        assert_eq!(r.classification, Classification::Saddle);
        let mut mods = moduli(&r);
        mods.sort_by(f64::total_cmp);
        assert!((mods[4] - 2.0).abs() < 1e-10);
        assert!(mods[..4].iter().all(|v| (v - 0.5).abs() < 1e-10));
    }

    #[test]
    fn not_a_fixed_point() {
        let t = make_regular(4).unwrap();
        let x = SimplexPoint::new(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        assert!(matches!(classify_fixed_point(&t, &x, DEFAULT_BAND), Err(Error::NotAFixedPoint { .. })));
    }

    #[test]
    fn regular_four_fixed_points() {
        let t = make_regular(4).unwrap();
        let search = find_fixed_points(&t, 10, DEFAULT_SOLVER_TOL, 3).unwrap();
        assert_eq!(search.reports.len(), 5);
        let c = SimplexPoint::center(4).unwrap();
        assert!(search.reports.iter().any(|r| r.point.sup_distance(&c) < 1e-10));
        for i in 1..=4 {
            let e = SimplexPoint::vertex(4, i).unwrap();
            assert!(search.reports.iter().any(|r| r.point.sup_distance(&e) < 1e-10));
        }
    }

    #[test]
    fn alpha_combination_fixed_points() {
        let pi = parse_cycles("(1 2)", 2).unwrap();
        let t = make_alpha_combination(3, &pi, 0.5).unwrap();
        let search = find_fixed_points(&t, 10, DEFAULT_SOLVER_TOL, 3).unwrap();
        let star = SimplexPoint::new(&[2.0 / 7.0, 2.0 / 7.0, 3.0 / 7.0]).unwrap();
        let e3 = SimplexPoint::vertex(3, 3).unwrap();
        assert_eq!(search.reports.len(), 2);
        let hit = search.reports.iter().find(|r| r.point.sup_distance(&star) < 1e-10).unwrap();
        assert_eq!(hit.classification, Classification::Attracting);
        assert!(search.reports.iter().any(|r| r.point.sup_distance(&e3) < 1e-10));
    }

    #[test]
    fn quasi_strict_fixed_points() {
        let pi = parse_cycles("(1 2 3)", 3).unwrap();
        let t = make_quasi_strict(4, &pi).unwrap();
        let search = find_fixed_points(&t, 10, DEFAULT_SOLVER_TOL, 3).unwrap();
        let star = SimplexPoint::new(&[1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5]).unwrap();
        assert_eq!(search.reports.len(), 2);
        assert!(search.reports.iter().any(|r| r.point.sup_distance(&star) < 1e-10));
        assert!(search.reports.iter().any(|r| r.point.sup_distance(&SimplexPoint::vertex(4, 4).unwrap()) < 1e-10));
    }
}
