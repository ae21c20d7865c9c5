//! Small dense linear algebra: matrices, LU solves, and real-matrix eigenvalues.
//!
//! Eigenvalues use balancing, reduction to upper Hessenberg form by stabilized
//! elimination, and the shifted double-step QR iteration. Sizes here are tiny
//! (`m` up to a few dozen), so everything is dense and row-major.

use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: alloc::vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Column sums.
    pub fn column_sums(&self) -> Vec<f64> {
        let mut sums = alloc::vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v;
            }
        }
        sums
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, v| a.max(v.abs()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// A complex eigenvalue `re + i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn modulus(&self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

/// Solves `a x = b` by LU with partial pivoting. Returns `None` when a pivot
/// falls below `1e-14` times the largest entry of `a`.
pub fn solve(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    assert_eq!(b.len(), n);
    let scale = a.max_abs();
    if scale == 0.0 {
        return None;
    }
    let mut lu = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let (piv, piv_val) = (col..n)
            .map(|r| (r, lu[(r, col)].abs()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_val <= 1e-14 * scale {
            return None;
        }
        if piv != col {
            for j in 0..n {
                let tmp = lu[(col, j)];
                lu[(col, j)] = lu[(piv, j)];
                lu[(piv, j)] = tmp;
            }
            x.swap(col, piv);
        }
        let d = lu[(col, col)];
        for r in col + 1..n {
            let f = lu[(r, col)] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                lu[(r, j)] -= f * lu[(col, j)];
            }
            x[r] -= f * x[col];
        }
    }
    for i in (0..n).rev() {
        let mut acc = x[i];
        for j in i + 1..n {
            acc -= lu[(i, j)] * x[j];
        }
        x[i] = acc / lu[(i, i)];
    }
    Some(x)
}

/// Orthonormal basis of the zero-sum hyperplane `{v : sum(v) = 0}` in `R^m`,
/// as the columns of an `m × (m-1)` matrix (Helmert vectors).
pub fn tangent_basis(m: usize) -> Matrix {
    let mut q = Matrix::zeros(m, m.saturating_sub(1));
    for k in 1..m {
        let norm = libm::sqrt((k * (k + 1)) as f64);
        for i in 0..k {
            q[(i, k - 1)] = 1.0 / norm;
        }
        q[(k, k - 1)] = -(k as f64) / norm;
    }
    q
}

/// `Qᵀ J Q` for the tangent basis `Q`: the action of `J` on zero-sum vectors,
/// valid whenever `J` maps that hyperplane into itself.
pub fn restrict_to_tangent(j: &Matrix) -> Matrix {
    let q = tangent_basis(j.rows);
    q.transpose().mul(&j.mul(&q))
}

/// All eigenvalues of a real square matrix, sorted by decreasing modulus
/// (ties broken by real part, then imaginary part).
pub fn eigenvalues(a: &Matrix) -> Result<Vec<Eigenvalue>> {
    let n = a.rows;
    assert_eq!(a.cols, n);
    if n == 0 {
        return Ok(Vec::new());
    }
    // 1-based working copy, as in the classical formulation of the algorithm.
    let mut h = alloc::vec![alloc::vec![0.0f64; n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            h[i + 1][j + 1] = a[(i, j)];
        }
    }
    balance(&mut h, n);
    to_hessenberg(&mut h, n);
    let mut out = hessenberg_qr(&mut h, n)?;
    out.sort_by(|x, y| {
        y.modulus()
            .partial_cmp(&x.modulus())
            .unwrap_or(core::cmp::Ordering::Equal)
            .then(y.re.partial_cmp(&x.re).unwrap_or(core::cmp::Ordering::Equal))
            .then(y.im.partial_cmp(&x.im).unwrap_or(core::cmp::Ordering::Equal))
    });
    Ok(out)
}

fn balance(a: &mut [Vec<f64>], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut last = false;
    while !last {
        last = true;
        for i in 1..=n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 1..=n {
                if j != i {
                    c += a[j][i].abs();
                    r += a[i][j].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    last = false;
                    let g = 1.0 / f;
                    for j in 1..=n {
                        a[i][j] *= g;
                    }
                    for j in 1..=n {
                        a[j][i] *= f;
                    }
                }
            }
        }
    }
}

fn to_hessenberg(a: &mut [Vec<f64>], n: usize) {
    if n < 3 {
        return;
    }
    for m in 2..n {
        let mut x: f64 = 0.0;
        let mut i = m;
        for j in m..=n {
            if a[j][m - 1].abs() > x.abs() {
                x = a[j][m - 1];
                i = j;
            }
        }
        if i != m {
            for j in (m - 1)..=n {
                let t = a[i][j];
                a[i][j] = a[m][j];
                a[m][j] = t;
            }
            for j in 1..=n {
                let t = a[j][i];
                a[j][i] = a[j][m];
                a[j][m] = t;
            }
        }
        if x != 0.0 {
            for i in (m + 1)..=n {
                let mut y = a[i][m - 1];
                if y != 0.0 {
                    y /= x;
                    a[i][m - 1] = y;
                    for j in m..=n {
                        a[i][j] -= y * a[m][j];
                    }
                    for j in 1..=n {
                        a[j][m] += y * a[j][i];
                    }
                }
            }
        }
    }
    // Clear the multipliers stored below the subdiagonal.
    for i in 3..=n {
        for j in 1..=(i - 2) {
            a[i][j] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

fn hessenberg_qr(a: &mut [Vec<f64>], n: usize) -> Result<Vec<Eigenvalue>> {
    let mut wr = alloc::vec![0.0; n + 1];
    let mut wi = alloc::vec![0.0; n + 1];
    let mut anorm = 0.0;
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[i][j].abs();
        }
    }
    let mut nn = n as isize;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w);
    while nn >= 1 {
        let mut its = 0;
        loop {
            let nnu = nn as usize;
            let mut l = nnu;
            while l >= 2 {
                let mut s = a[l - 1][l - 1].abs() + a[l][l].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[l][l - 1].abs() + s == s {
                    a[l][l - 1] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[nnu][nnu];
            if l == nnu {
                wr[nnu] = x + t;
                wi[nnu] = 0.0;
                nn -= 1;
            } else {
                y = a[nnu - 1][nnu - 1];
                w = a[nnu][nnu - 1] * a[nnu - 1][nnu];
                if l == nnu - 1 {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = libm::sqrt(q.abs());
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        wr[nnu - 1] = x + z;
                        wr[nnu] = x + z;
                        if z != 0.0 {
                            wr[nnu] = x - w / z;
                        }
                        wi[nnu - 1] = 0.0;
                        wi[nnu] = 0.0;
                    } else {
                        wr[nnu - 1] = x + p;
                        wr[nnu] = x + p;
                        wi[nnu - 1] = -z;
                        wi[nnu] = z;
                    }
                    nn -= 2;
                } else {
                    if its >= 60 {
                        return Err(Error::EigenNoConvergence);
                    }
                    if its > 0 && its % 10 == 0 {
                        // Exceptional shift.
                        t += x;
                        for i in 1..=nnu {
                            a[i][i] -= x;
                        }
                        let s = a[nnu][nnu - 1].abs() + a[nnu - 1][nnu - 2].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    let mut m = nnu - 2;
                    loop {
                        z = a[m][m];
                        r = x - z;
                        let s0 = y - z;
                        p = (r * s0 - w) / a[m + 1][m] + a[m][m + 1];
                        q = a[m + 1][m + 1] - z - r - s0;
                        r = a[m + 2][m + 1];
                        let s = p.abs() + q.abs() + r.abs();
                        p /= s;
                        q /= s;
                        r /= s;
                        if m == l {
                            break;
                        }
                        let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                        let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                        if u + v == v {
                            break;
                        }
                        m -= 1;
                    }
                    for i in (m + 2)..=nnu {
                        a[i][i - 2] = 0.0;
                        if i != m + 2 {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    let mut k = m;
                    while k + 1 <= nnu {
                        if k != m {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if k != nnu - 1 {
                                r = a[k + 2][k - 1];
                            }
                            x = p.abs() + q.abs() + r.abs();
                            if x != 0.0 {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        let s = sign(libm::sqrt(p * p + q * q + r * r), p);
                        if s != 0.0 {
                            if k == m {
                                if l != m {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for j in k..=nnu {
                                p = a[k][j] + q * a[k + 1][j];
                                if k != nnu - 1 {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            let mmin = if nnu < k + 3 { nnu } else { k + 3 };
                            for i in l..=mmin {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if k != nnu - 1 {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                        k += 1;
                    }
                }
            }
            if nn < 1 || l as isize >= nn - 1 {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| Eigenvalue { re: wr[i], im: wi[i] }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn moduli(m: &Matrix) -> Vec<f64> {
        eigenvalues(m).unwrap().iter().map(Eigenvalue::modulus).collect()
    }

    #[test]
    fn diagonal_and_triangular() {
        let a = Matrix::from_rows(&[vec![3.0, 1.0, 0.0], vec![0.0, -2.0, 5.0], vec![0.0, 0.0, 0.5]]);
        let ev = eigenvalues(&a).unwrap();
        assert!((ev[0].re - 3.0).abs() < 1e-12);
        assert!((ev[1].re + 2.0).abs() < 1e-12);
        assert!((ev[2].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rotation_has_complex_pair() {
        let a = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let ev = eigenvalues(&a).unwrap();
        assert!(ev.iter().all(|e| (e.modulus() - 1.0).abs() < 1e-12 && e.re.abs() < 1e-12));
        assert!((ev[0].im + ev[1].im).abs() < 1e-12);
    }

    #[test]
    fn cyclic_shift_roots_of_unity() {
        let n = 5;
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            a[(i, (i + 1) % n)] = 1.0;
        }
        assert!(moduli(&a).iter().all(|m| (m - 1.0).abs() < 1e-12));
    }

    #[test]
    fn zero_matrix() {
        assert!(moduli(&Matrix::zeros(4, 4)).iter().all(|&m| m == 0.0));
    }

    #[test]
    fn solve_small_system() {
        let a = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]);
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        let singular = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(solve(&singular, &[1.0, 2.0]).is_none());
    }

    #[test]
    fn tangent_basis_is_orthonormal_and_zero_sum() {
        for m in 2..8 {
            let q = tangent_basis(m);
            let g = q.transpose().mul(&q);
            for i in 0..m - 1 {
                for j in 0..m - 1 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((g[(i, j)] - expect).abs() < 1e-14);
                }
            }
            assert!(q.column_sums().iter().all(|s| s.abs() < 1e-14));
        }
    }
}
