//! Damped Gauss–Newton (Levenberg–Marquardt) for `G(x) = x` on the simplex.
//!
//! The last coordinate is eliminated through `x_m = 1 − Σ_{k<m} x_k`, so the
//! unknowns live in the affine hull. Trial points are projected back onto the
//! simplex by clamping negatives and renormalizing, which lets the iteration
//! reach solutions on the boundary.

use alloc::vec::Vec;

use crate::linalg::{solve, Matrix};
use crate::simplex::sup_distance;
use crate::tensor::CoefficientTensor;

const MAX_ITER: usize = 300;
const MAX_DAMPING: f64 = 1e16;

/// Value and Jacobian of a map `G: R^m → R^m`.
pub(crate) trait SimplexMap {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Vec<f64>;
    fn value_and_jacobian(&self, x: &[f64]) -> (Vec<f64>, Matrix);
}

/// `V^n` for the raw quadratic map, with the chain-rule Jacobian.
pub(crate) struct PowerMap<'a> {
    pub tensor: &'a CoefficientTensor,
    pub n: usize,
}

impl SimplexMap for PowerMap<'_> {
    fn dim(&self) -> usize {
        self.tensor.dim()
    }

    fn value(&self, x: &[f64]) -> Vec<f64> {
        let mut cur = x.to_vec();
        let mut next = alloc::vec![0.0; cur.len()];
        for _ in 0..self.n {
            self.tensor.evaluate_raw(&cur, &mut next);
            core::mem::swap(&mut cur, &mut next);
        }
        cur
    }

    fn value_and_jacobian(&self, x: &[f64]) -> (Vec<f64>, Matrix) {
        let m = x.len();
        let mut cur = x.to_vec();
        let mut next = alloc::vec![0.0; m];
        let mut jac = Matrix::identity(m);
        for _ in 0..self.n {
            jac = self.tensor.jacobian_raw(&cur).mul(&jac);
            self.tensor.evaluate_raw(&cur, &mut next);
            core::mem::swap(&mut cur, &mut next);
        }
        (cur, jac)
    }
}

/// Clamps negatives to zero and rescales to unit sum.
pub(crate) fn project(x: &mut [f64]) {
    for v in x.iter_mut() {
        if *v < 0.0 || !v.is_finite() {
            *v = 0.0;
        }
    }
    let s: f64 = x.iter().sum();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    } else {
        let m = x.len() as f64;
        x.iter_mut().for_each(|v| *v = 1.0 / m);
    }
}

fn residual(map: &impl SimplexMap, x: &[f64]) -> Vec<f64> {
    let g = map.value(x);
    g.iter().zip(x).map(|(a, b)| a - b).collect()
}

fn norm_sq(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

fn sup(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

/// Solves `G(x) = x` from `start`; returns the solution once `‖G(x) − x‖∞ < tol`.
pub(crate) fn solve_fixed(map: &impl SimplexMap, start: &[f64], tol: f64) -> Option<Vec<f64>> {
    let m = map.dim();
    let d = m - 1;
    let mut x = start.to_vec();
    project(&mut x);
    let mut r = residual(map, &x);
    let mut mu: Option<f64> = None;
    for _ in 0..MAX_ITER {
        if sup(&r) < tol {
            return Some(x);
        }
        let (g, jac) = map.value_and_jacobian(&x);
        r = g.iter().zip(&x).map(|(a, b)| a - b).collect();
        if sup(&r) < tol {
            return Some(x);
        }
        // Reduced Jacobian of the full residual with respect to x_1..x_{m-1}.
        let mut a = Matrix::zeros(m, d);
        for k in 0..m {
            for j in 0..d {
                let delta = if k == j { 1.0 } else { 0.0 };
                let last = if k == d { 1.0 } else { 0.0 };
                a[(k, j)] = jac[(k, j)] - jac[(k, d)] - delta + last;
            }
        }
        let at = a.transpose();
        let h = at.mul(&a);
        let grad = at.mul_vec(&r);
        let diag_max = (0..d).map(|i| h[(i, i)]).fold(0.0, f64::max).max(1e-300);
        let mut damping = mu.unwrap_or(1e-9 * diag_max);
        let base = norm_sq(&r);
        let mut accepted = false;
        while damping < MAX_DAMPING * diag_max {
            let mut hd = h.clone();
            for i in 0..d {
                hd[(i, i)] += damping;
            }
            let rhs: Vec<f64> = grad.iter().map(|v| -v).collect();
            if let Some(step) = solve(&hd, &rhs) {
                let mut trial = x.clone();
                for j in 0..d {
                    trial[j] += step[j];
                }
                trial[d] = 1.0 - trial[..d].iter().sum::<f64>();
                project(&mut trial);
                let rt = residual(map, &trial);
                let val = norm_sq(&rt);
                if val.is_finite() && val < base {
                    let moved = sup_distance(&trial, &x);
                    x = trial;
                    r = rt;
                    mu = Some((damping / 3.0).max(1e-15 * diag_max));
                    accepted = true;
                    if moved == 0.0 {
                        return (sup(&r) < tol).then_some(x);
                    }
                    break;
                }
            }
            damping *= 4.0;
        }
        if !accepted {
            return (sup(&r) < tol).then_some(x);
        }
    }
    (sup(&r) < tol).then_some(x)
}

/// Damped iteration `x ← (x + G(x))/2`, used when the Newton-type solver stalls.
pub(crate) fn damped_iteration(map: &impl SimplexMap, start: &[f64], steps: usize) -> Vec<f64> {
    let mut x = start.to_vec();
    project(&mut x);
    for _ in 0..steps {
        let g = map.value(&x);
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi = 0.5 * (*xi + gi);
        }
        project(&mut x);
    }
    x
}

/// Deterministic start set: vertices, the center, edge midpoints, then `extra` points.
pub(crate) fn structured_starts(m: usize) -> Vec<Vec<f64>> {
    let mut starts = Vec::new();
    for i in 0..m {
        let mut v = alloc::vec![0.0; m];
        v[i] = 1.0;
        starts.push(v);
    }
    starts.push(alloc::vec![1.0 / m as f64; m]);
    for i in 0..m {
        for j in i + 1..m {
            let mut v = alloc::vec![0.0; m];
            v[i] = 0.5;
            v[j] = 0.5;
            starts.push(v);
        }
    }
    starts
}
