//! Dynamical analysis of operators: fixed points, Lyapunov functions,
//! periodic orbits, ω-limit sets, invariant sets and numerical probes.

pub mod fixed_points;
pub mod invariant;
pub mod lyapunov;
pub mod omega;
pub mod periodic;
pub mod probes;
mod solver;

pub use fixed_points::{
    classify_fixed_point, find_fixed_points, tangent_spectrum, Classification, FixedPointReport, FixedPointSearch,
};
pub use invariant::{check_invariant_set, InvariantSet, InvariantSetReport};
pub use lyapunov::{check_lyapunov, Direction, LyapunovFn, LyapunovReport};
pub use omega::{detect_period, omega_estimate, OmegaSet};
pub use periodic::{periodic_absence_search, PeriodicSearchReport, PeriodicSolution, SolutionKind};
pub use probes::{
    contraction_report, ergodicity_probe, max_norm_check, psi_bound_check, ContractionReport, ErgodicityReport,
    MaxNormReport, PsiReport,
};
