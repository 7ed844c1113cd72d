//! Dense complex linear algebra.
//!
//! Only what the spatial core needs: column-major matrices, Hermitian
//! eigendecomposition (Householder reduction to a real tridiagonal matrix
//! followed by implicit QL), and a thin QR factorization.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // the std methods shadow it in test builds
use num_traits::Float;

use crate::error::{Error, Result};
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Column-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    ///
    /// Panics if the columns have different lengths.
    pub fn from_columns<V: AsRef<[C64]>>(rows: usize, columns: &[V]) -> Self {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            data.extend_from_slice(c);
        }
        Self {
            rows,
            cols: columns.len(),
            data,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
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

    pub fn col(&self, j: usize) -> &[C64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [C64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[C64]> {
        self.data.chunks_exact(self.rows.max(1)).take(self.cols)
    }

    /// Keeps the first `n` columns.
    pub fn truncate_cols(mut self, n: usize) -> Self {
        let n = n.min(self.cols);
        self.data.truncate(n * self.rows);
        self.cols = n;
        self
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            let dst = &mut out.data[j * self.rows..(j + 1) * self.rows];
            for (k, &b) in rhs.col(j).iter().enumerate() {
                if b == ZERO {
                    continue;
                }
                axpy(b, self.col(k), dst);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![ZERO; self.rows];
        for (k, &b) in v.iter().enumerate() {
            axpy(b, self.col(k), &mut out);
        }
        out
    }

    /// `selfᴴ · v`
    pub fn adjoint_mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.rows, v.len());
        self.columns().map(|c| dotc(c, v)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&mut self, s: f64) {
        for z in &mut self.data {
            *z *= s;
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// ‖A − Aᴴ‖_F / ‖A‖_F (zero for the zero matrix).
    pub fn hermitian_defect(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut num = 0.0;
        for j in 0..self.cols {
            for i in 0..self.rows {
                num += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        let den = self.frobenius_norm();
        if den == 0.0 {
            0.0
        } else {
            num.sqrt() / den
        }
    }

    /// Adds `alpha · v vᴴ` (Hermitian rank-one update).
    pub fn add_outer(&mut self, alpha: f64, v: &[C64]) {
        assert_eq!(self.rows, v.len());
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        for j in 0..n {
            let s = v[j].conj() * alpha;
            let col = &mut self.data[j * n..(j + 1) * n];
            axpy(s, v, col);
        }
    }

    /// `A Aᴴ` for a tall or wide `A`, assembled from the lower triangle.
    pub fn gram_outer(a: &CMat) -> CMat {
        let n = a.rows;
        let mut out = CMat::zeros(n, n);
        for v in a.columns() {
            for j in 0..n {
                let s = v[j].conj();
                if s == ZERO {
                    continue;
                }
                let col = &mut out.data[j * n..(j + 1) * n];
                for i in j..n {
                    col[i] += v[i] * s;
                }
            }
        }
        for j in 0..n {
            out[(j, j)].im = 0.0;
            for i in (j + 1)..n {
                out[(j, i)] = out[(i, j)].conj();
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[j * self.rows + i]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[j * self.rows + i]
    }
}

/// `aᴴ b`
#[inline]
pub fn dotc(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    let (mut re, mut im) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        re += x.re * y.re + x.im * y.im;
        im += x.re * y.im - x.im * y.re;
    }
    C64::new(re, im)
}

/// `y += alpha · x`
#[inline]
pub fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

#[inline]
pub fn norm(v: &[C64]) -> f64 {
    norm_sqr(v).sqrt()
}

/// Eigendecomposition `A = V diag(λ) Vᴴ` of a Hermitian matrix, eigenvalues in
/// descending order.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    /// Factorizes `a`. The input must be Hermitian to within `1e-12` relative.
    pub fn new(a: &CMat) -> Result<Self> {
        if a.rows != a.cols {
            return Err(Error::Dimension {
                expected: a.rows,
                got: a.cols,
            });
        }
        let defect = a.hermitian_defect();
        if defect > 1e-12 {
            return Err(Error::NotHermitian(defect));
        }
        let n = a.rows;
        if n == 0 {
            return Ok(Self {
                values: Vec::new(),
                vectors: CMat::zeros(0, 0),
            });
        }

        // Work on a copy normalized to unit max-modulus so tiny received
        // powers (1e-12 mW and below) never flirt with underflow.
        let scale = a.data.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(Self {
                values: vec![0.0; n],
                vectors: CMat::identity(n),
            });
        }
        let mut work = a.clone();
        work.scale(1.0 / scale);

        let (mut d, mut e, mut z) = tridiagonalize(work);
        tridiagonal_ql(&mut d, &mut e, &mut z)?;

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| d[j].total_cmp(&d[i]).then(i.cmp(&j)));
        let values = order.iter().map(|&i| d[i] * scale).collect();
        let mut vectors = CMat::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.col_mut(dst).copy_from_slice(z.col(src));
        }
        Ok(Self { values, vectors })
    }

    /// `V diag(λ) Vᴴ`
    pub fn reconstruct(&self) -> CMat {
        let n = self.vectors.rows;
        let mut out = CMat::zeros(n, n);
        for (v, &l) in self.vectors.columns().zip(&self.values) {
            out.add_outer(l, v);
        }
        out
    }
}

/// Householder reduction `A = Q T Qᴴ` with `T` real symmetric tridiagonal.
///
/// Returns the diagonal, the subdiagonal (last entry zero) and `Q`.
fn tridiagonalize(mut a: CMat) -> (Vec<f64>, Vec<f64>, CMat) {
    let n = a.rows;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut taus = vec![ZERO; n.saturating_sub(1)];
    let mut y = vec![ZERO; n];

    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        // Reflector for x = A[k+1.., k], chosen so that Hᴴ x = beta e1 with
        // beta real.
        let (tau, beta) = {
            let x = &mut a.data[k * n + k + 1..(k + 1) * n];
            let alpha = x[0];
            let xnorm = norm(&x[1..]);
            if xnorm == 0.0 && alpha.im == 0.0 {
                (ZERO, alpha.re)
            } else {
                let mag = (alpha.norm_sqr() + xnorm * xnorm).sqrt();
                let beta = if alpha.re >= 0.0 { -mag } else { mag };
                let tau = (C64::new(beta, 0.0) - alpha) / beta;
                let inv = ONE / (alpha - beta);
                for xi in &mut x[1..] {
                    *xi *= inv;
                }
                x[0] = ONE;
                (tau, beta)
            }
        };
        e[k] = beta;
        taus[k] = tau;
        if tau == ZERO {
            continue;
        }

        // A22 ← Hᴴ A22 H  as  A22 − v wᴴ − w vᴴ  with
        // w = τ A22 v − ½ τ (τ A22 v)ᴴ v · v.
        let off = k + 1;
        let v: Vec<C64> = a.data[k * n + off..(k + 1) * n].to_vec();
        let yv = &mut y[..m];
        yv.fill(ZERO);
        for (jj, &vj) in v.iter().enumerate() {
            let col = &a.data[(off + jj) * n + off..(off + jj + 1) * n];
            axpy(vj, col, yv);
        }
        for yi in yv.iter_mut() {
            *yi *= tau;
        }
        let alpha = -0.5 * tau * dotc(yv, &v);
        axpy(alpha, &v, yv);
        for jj in 0..m {
            let vj = v[jj].conj();
            let wj = yv[jj].conj();
            let col = &mut a.data[(off + jj) * n + off..(off + jj + 1) * n];
            for ii in 0..m {
                col[ii] -= v[ii] * wj + yv[ii] * vj;
            }
        }
    }
    for k in 0..n {
        d[k] = a[(k, k)].re;
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }

    // Q = H_0 H_1 ⋯ H_{n-2}, accumulated backwards.
    let mut q = CMat::identity(n);
    let mut scratch = vec![ZERO; n];
    for k in (0..n.saturating_sub(1)).rev() {
        let tau = taus[k];
        if tau == ZERO {
            continue;
        }
        let off = k + 1;
        let v = &a.data[k * n + off..(k + 1) * n];
        // Q22 ← Q22 − τ v (vᴴ Q22). Columns left of `off` are still e_j there.
        let s = &mut scratch[..n - off];
        for (jj, sj) in s.iter_mut().enumerate() {
            let col = &q.data[(off + jj) * n + off..(off + jj + 1) * n];
            *sj = dotc(v, col);
        }
        for (jj, &sj) in s.iter().enumerate() {
            let col = &mut q.data[(off + jj) * n + off..(off + jj + 1) * n];
            axpy(-tau * sj, v, col);
        }
    }
    (d, e, q)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix, rotating the
/// columns of `z` along. `e[i]` couples `d[i]` and `d[i+1]`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut CMat) -> Result<()> {
    let n = d.len();
    let eps = f64::EPSILON;
    let rows = z.rows;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence);
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s: f64 = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (left, right) = z.data.split_at_mut((i + 1) * rows);
                    let zi = &mut left[i * rows..];
                    let zi1 = &mut right[..rows];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let h = *b;
                        *b = *a * s + h * c;
                        *a = *a * c - h * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Thin QR factorization `A = Q R` by twice-iterated Gram–Schmidt.
///
/// `Q` is rows × cols with orthonormal columns, `R` is cols × cols upper
/// triangular with a real non-negative diagonal. Fails when a column is
/// (numerically) in the span of the previous ones.
pub fn thin_qr(a: &CMat, rank_tol: f64) -> Result<(CMat, CMat)> {
    let (m, k) = (a.rows, a.cols);
    let mut q = a.clone();
    let mut r = CMat::zeros(k, k);
    let scale = a.columns().map(norm).fold(0.0, f64::max);
    for j in 0..k {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = q.data.split_at_mut(j * m);
                let qi = &done[i * m..(i + 1) * m];
                let qj = &mut rest[..m];
                let c = dotc(qi, qj);
                axpy(-c, qi, qj);
                r[(i, j)] += c;
            }
        }
        let nj = norm(q.col(j));
        if !(nj > rank_tol * scale) {
            return Err(Error::RankDeficient {
                pivot: if scale > 0.0 { nj / scale } else { 0.0 },
            });
        }
        r[(j, j)] = C64::new(nj, 0.0);
        for z in q.col_mut(j) {
            *z /= nj;
        }
    }
    Ok((q, r))
}

/// Inverse of an upper-triangular matrix with non-zero diagonal.
pub fn upper_triangular_inverse(r: &CMat) -> CMat {
    let k = r.rows;
    let mut inv = CMat::zeros(k, k);
    for j in 0..k {
        inv[(j, j)] = ONE / r[(j, j)];
        for i in (0..j).rev() {
            let mut s = ZERO;
            for l in (i + 1)..=j {
                s += r[(i, l)] * inv[(l, j)];
            }
            inv[(i, j)] = -s / r[(i, i)];
        }
    }
    inv
}
