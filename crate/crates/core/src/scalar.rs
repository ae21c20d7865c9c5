//! One-dimensional maps driving the last coordinate.
//!
//! `f(x) = 2x² − 2x + 1` and its deformation
//! `f_α(x) = (2 − r)x² − 2(1 − r)x + (1 − r)` with `r = (m−2)α/(m−1)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarMap {
    F,
    FAlpha { m: usize, alpha: f64 },
}

impl ScalarMap {
    pub fn f_alpha(m: usize, alpha: f64) -> Result<Self> {
        if m < 3 {
            return Err(Error::DimensionTooSmall { m, min: 3 });
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::WeightOutOfRange(alpha));
        }
        Ok(ScalarMap::FAlpha { m, alpha })
    }

    /// The shift `r = (m−2)α/(m−1)`; zero for `F`.
    pub fn shift(&self) -> f64 {
        match *self {
            ScalarMap::F => 0.0,
            ScalarMap::FAlpha { m, alpha } => shift(m, alpha),
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let r = self.shift();
        let y = (2.0 - r) * x * x - 2.0 * (1.0 - r) * x + (1.0 - r);
        y.clamp(0.0, 1.0)
    }

    /// `f^n(x0)`.
    pub fn iterate(&self, x0: f64, n: usize) -> Result<f64> {
        check_domain(x0)?;
        let mut x = x0;
        for _ in 0..n {
            x = self.eval_unchecked(x);
        }
        Ok(x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let r = self.shift();
        2.0 * (2.0 - r) * x - 2.0 * (1.0 - r)
    }

    /// The interior fixed point: ½ for `F`, `x_m*` for `F_α`.
    pub fn fixed_point(&self) -> f64 {
        match *self {
            ScalarMap::F => 0.5,
            ScalarMap::FAlpha { m, alpha } => scalar_fixed_point(m, alpha),
        }
    }
}

fn shift(m: usize, alpha: f64) -> f64 {
    (m as f64 - 2.0) * alpha / (m as f64 - 1.0)
}

fn check_domain(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::DomainViolation { value: x })
    }
}

/// `x_m* = ((1−α)(m−1) + α) / ((2−α)(m−1) + α)`.
pub fn scalar_fixed_point(m: usize, alpha: f64) -> f64 {
    let m1 = m as f64 - 1.0;
    ((1.0 - alpha) * m1 + alpha) / ((2.0 - alpha) * m1 + alpha)
}

/// The logistic map with `μ = 2`.
pub fn logistic(y: f64) -> f64 {
    2.0 * y * (1.0 - y)
}

/// Affine conjugacy `h(x) = (2 − r)(1 − x)/2` with `h ∘ f_α = g ∘ h`, `g(y) = 2y(1−y)`.
pub fn conjugacy_h(m: usize, alpha: f64, x: f64) -> f64 {
    let r = shift(m, alpha);
    (2.0 - r) * (1.0 - x) / 2.0
}

/// Roots of `f^n(x) − x` on `[0, 1]`.
///
/// Scans a uniform grid of `grid + 1` nodes, keeps nodes with
/// `|f^n(x) − x| < 1e-10`, bisects every sign change and polishes local minima
/// of `|f^n(x) − x|` (double roots). Roots closer than `1e-8` are merged.
pub fn low_period_scan(map: &ScalarMap, n: usize, grid: usize) -> Result<Vec<f64>> {
    const ACCEPT: f64 = 1e-10;
    const MERGE: f64 = 1e-8;
    if n == 0 {
        return Err(Error::InvalidArgument("period must be at least 1"));
    }
    if grid < 1000 {
        return Err(Error::InvalidArgument("grid must have at least 1000 cells"));
    }
    let d = |x: f64| {
        let mut y = x;
        for _ in 0..n {
            y = map.eval_unchecked(y);
        }
        y - x
    };
    let h = 1.0 / grid as f64;
    let xs: Vec<f64> = (0..=grid).map(|i| (i as f64 * h).min(1.0)).collect();
    let ds: Vec<f64> = xs.iter().map(|&x| d(x)).collect();

    let mut roots = Vec::new();
    for i in 0..=grid {
        if ds[i].abs() < ACCEPT {
            roots.push(xs[i]);
        }
    }
    for i in 0..grid {
        let (a, b) = (ds[i], ds[i + 1]);
        if a != 0.0 && b != 0.0 && (a < 0.0) != (b < 0.0) {
            let r = bisect(&d, xs[i], xs[i + 1], a);
            if d(r).abs() < ACCEPT {
                roots.push(r);
            }
        }
    }
    for i in 1..grid {
        let (l, c, r) = (ds[i - 1].abs(), ds[i].abs(), ds[i + 1].abs());
        if c <= l && c <= r && c >= ACCEPT && c < 1e-3 {
            let x = golden_min(&|x| d(x).abs(), xs[i - 1], xs[i + 1]);
            if d(x).abs() < ACCEPT {
                roots.push(x);
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        match merged.last() {
            Some(&last) if (r - last).abs() < MERGE => {}
            _ => merged.push(r),
        }
    }
    Ok(merged)
}

fn bisect(d: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut d_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let dm = d(mid);
        if dm == 0.0 {
            return mid;
        }
        if (dm < 0.0) == (d_lo < 0.0) {
            lo = mid;
            d_lo = dm;
        } else {
            hi = mid;
        }
    }
    if d(lo).abs() <= d(hi).abs() {
        lo
    } else {
        hi
    }
}

fn golden_min(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let phi = 0.618_033_988_749_894_9;
    let mut c = b - phi * (b - a);
    let mut e = a + phi * (b - a);
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if g(c) < g(e) {
            b = e;
        } else {
            a = c;
        }
        c = b - phi * (b - a);
        e = a + phi * (b - a);
    }
    0.5 * (a + b)
}
