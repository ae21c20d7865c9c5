//! Quadratic stochastic operators on the probability simplex.
//!
//! The crate builds heredity coefficient tensors for the classical operator
//! families, iterates them, and runs numerical probes of their dynamics:
//! fixed points and their spectra, Lyapunov monotonicity, periodic orbits,
//! ω-limit sets, invariant sets and Cesàro averages.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line front end live in the `qso` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod families;
pub mod linalg;
pub mod permutation;
pub mod sampling;
pub mod scalar;
pub mod simplex;
pub mod tensor;
pub mod trajectory;

pub use error::{Error, Result};
pub use families::{Family, FamilyInfo, FamilySpec, Operator};
pub use linalg::{Eigenvalue, Matrix};
pub use permutation::{parse_cycles, Permutation};
pub use scalar::ScalarMap;
pub use simplex::SimplexPoint;
pub use tensor::{convex_combine, CoefficientTensor};
pub use trajectory::{cesaro_means, iterate, Trajectory};
