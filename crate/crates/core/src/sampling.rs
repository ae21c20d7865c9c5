//! Seeded random points.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::simplex::SimplexPoint;
use crate::tensor::CoefficientTensor;

/// Deterministic sampler over the simplex, the unit interval and small integers.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn open_uniform(&mut self) -> f64 {
        loop {
            let u = self.uniform();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform on `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.uniform() * n as f64) as usize % n
    }

    /// A standard exponential draw, strictly positive.
    pub fn exponential(&mut self) -> f64 {
        loop {
            let e = -libm::log(1.0 - self.uniform());
            if e > 0.0 {
                return e;
            }
        }
    }

    /// Uniform (flat Dirichlet) point of the open simplex on `m` symbols.
    pub fn interior_point(&mut self, m: usize) -> SimplexPoint {
        let w: Vec<f64> = (0..m).map(|_| self.exponential()).collect();
        SimplexPoint::from_weights(w)
    }

    pub fn interior_points(&mut self, m: usize, count: usize) -> Vec<SimplexPoint> {
        (0..count).map(|_| self.interior_point(m)).collect()
    }

    /// A random stochastic tensor: each pair row is a flat Dirichlet draw with
    /// roughly a third of its entries zeroed.
    pub fn tensor(&mut self, m: usize) -> CoefficientTensor {
        let pairs = m * (m + 1) / 2;
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(pairs);
        for _ in 0..pairs {
            let mut w: Vec<f64> = (0..m).map(|_| if self.uniform() < 0.3 { 0.0 } else { self.exponential() }).collect();
            if w.iter().all(|&v| v == 0.0) {
                w[self.index(m)] = 1.0;
            }
            let s: f64 = w.iter().sum();
            w.iter_mut().for_each(|v| *v /= s);
            rows.push(w);
        }
        let mut pair = 0;
        let mut order = alloc::vec![alloc::vec![0usize; m]; m];
        for (i, row) in order.iter_mut().enumerate() {
            for slot in row.iter_mut().skip(i) {
                *slot = pair;
                pair += 1;
            }
        }
        CoefficientTensor::from_fn(m, |i, j, k| rows[order[i][j]][k]).expect("rows are stochastic")
    }
}

/// `count` seeded interior points of `S^{m-1}`.
pub fn random_starts(m: usize, count: usize, seed: u64) -> Vec<SimplexPoint> {
    Sampler::new(seed).interior_points(m, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_interior() {
        let a = random_starts(5, 20, 7);
        let b = random_starts(5, 20, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_starts(5, 20, 8));
        for p in &a {
            assert!(p.is_interior(0.0));
            assert!((p.coords().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_range() {
        let mut s = Sampler::new(1);
        for _ in 0..1000 {
            let u = s.open_uniform();
            assert!(u > 0.0 && u < 1.0);
            assert!(s.index(3) < 3);
        }
    }
}
