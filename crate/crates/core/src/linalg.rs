//! Small dense complex matrices.
//!
//! Everything in this crate acts on (2s+1)-dimensional spin sectors or
//! n-qubit registers with n <= 12, so a plain row-major `Vec` matrix with
//! O(n^3) kernels is all that is needed. Hermitian spectra are computed by
//! embedding A = X + iY into the real symmetric [[X, -Y], [Y, X]] and
//! running cyclic Jacobi; the 2n eigenvalues come out in duplicate pairs.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::fmath;
use crate::Error;

pub type C64 = num_complex::Complex<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// A * v for a column vector v.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// |u><v| outer product.
    pub fn outer(u: &[C64], v: &[C64]) -> CMat {
        CMat::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        debug_assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Vec::new();
        }
        // Real symmetric embedding doubles every eigenvalue.
        let mut big = vec![0.0f64; (2 * n) * (2 * n)];
        let set = |r: usize, c: usize, v: f64, big: &mut [f64]| big[r * 2 * n + c] = v;
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                set(i, j, a.re, &mut big);
                set(i + n, j + n, a.re, &mut big);
                set(i, j + n, -a.im, &mut big);
                set(i + n, j, a.im, &mut big);
            }
        }
        let mut eig = jacobi_symmetric_eigenvalues(&mut big, 2 * n);
        eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Collapse the duplicate pairs, averaging against roundoff.
        (0..n)
            .map(|k| 0.5 * (eig[2 * k] + eig[2 * k + 1]))
            .collect()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.hermitian_eigenvalues()[0]
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// <u|v> with conjugation on the first argument.
pub fn vdot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    fmath::sqrt(v.iter().map(|a| a.norm_sqr()).sum())
}

/// Cyclic Jacobi on a row-major real symmetric matrix; returns eigenvalues.
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let idx = |i: usize, j: usize| i * n + j;
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        fmath::sqrt(2.0 * s)
    };
    let scale: f64 = (0..n * n).map(|k| a[k] * a[k]).sum::<f64>();
    let tol = 1e-15 * fmath::sqrt(scale).max(1e-300);
    for _sweep in 0..100 {
        if off(a) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if fmath::fabs(apq) <= 1e-300 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + fmath::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + fmath::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / fmath::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[idx(i, i)]).collect()
}

/// Solves the dense real system `a x = b` in place by Gaussian elimination
/// with partial pivoting. `a` is row-major n x n.
pub fn solve_real(a: &mut [f64], b: &mut [f64], n: usize) -> Result<Vec<f64>, Error> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let idx = |i: usize, j: usize| i * n + j;
    for col in 0..n {
        let mut piv = col;
        let mut best = fmath::fabs(a[idx(col, col)]);
        for r in (col + 1)..n {
            let v = fmath::fabs(a[idx(r, col)]);
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best < 1e-12 {
            return Err(Error::RankDeficient);
        }
        if piv != col {
            for j in 0..n {
                a.swap(idx(col, j), idx(piv, j));
            }
            b.swap(col, piv);
        }
        let d = a[idx(col, col)];
        for r in (col + 1)..n {
            let f = a[idx(r, col)] / d;
            if f == 0.0 {
                continue;
            }
            a[idx(r, col)] = 0.0;
            for j in (col + 1)..n {
                a[idx(r, j)] -= f * a[idx(col, j)];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0f64; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= a[idx(i, j)] * x[j];
        }
        x[i] = acc / a[idx(i, i)];
    }
    Ok(x)
}
