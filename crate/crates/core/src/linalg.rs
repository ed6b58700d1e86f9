//! Dense complex matrices: arithmetic, LU solves and eigendecompositions.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;
use num_traits::{One, Zero};

use crate::cmp::{ordering_quantum, quantized_cmp};
use crate::{Error, Result, C64};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![C64::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite"));
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::from_row_major(rows.len(), cols, data)
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let complex: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj_transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    pub fn frobenius(&self) -> f64 {
        frobenius(self)
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self[(r, c)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        Ok(&matmul(self, other)? - &matmul(other, self)?)
    }

    /// Right-multiplies by `diag(d)`, i.e. scales column `c` by `d[c]`.
    pub fn scale_columns(&self, d: &[C64]) -> CMatrix {
        assert_eq!(d.len(), self.cols);
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] * d[c])
    }

    /// Left-multiplies by `diag(d)`, i.e. scales row `r` by `d[r]`.
    pub fn scale_rows(&self, d: &[C64]) -> CMatrix {
        assert_eq!(d.len(), self.rows);
        CMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)] * d[r])
    }

    fn check_same_shape(&self, other: &CMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: (self.rows, self.cols),
                actual: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same_shape(other)?;
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

// Operator forms panic on shape mismatch; use the `try_*` methods and
// `matmul` for fallible versions.

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        self.try_add(rhs).expect("matrix shapes must agree")
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        self.try_sub(rhs).expect("matrix shapes must agree")
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        matmul(self, rhs).expect("inner dimensions must agree")
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale(-C64::one())
    }
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            expected: (a.cols, b.cols),
            actual: (b.rows, b.cols),
        });
    }
    let mut out = CMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik == C64::zero() {
                continue;
            }
            let brow = b.row(k);
            let orow = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, &bkj) in orow.iter_mut().zip(brow) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    /// Factors `a`, failing when a pivot falls below `n * eps * ||a||_inf`.
    pub fn factor(a: &CMatrix) -> Result<Lu> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows,
                cols: a.cols,
            });
        }
        let n = a.rows;
        let threshold = n as f64 * f64::EPSILON * a.norm_inf();
        Self::factor_with(a, |k, pivot| {
            if pivot.norm() <= threshold {
                Err(Error::SingularMatrix { pivot: k })
            } else {
                Ok(pivot)
            }
        })
    }

    /// Factors `a`, replacing tiny pivots by `floor` instead of failing.
    /// Used for inverse iteration where `a` is singular on purpose.
    fn factor_perturbed(a: &CMatrix, floor: f64) -> Lu {
        Self::factor_with(a, |_, pivot| {
            if pivot.norm() < floor {
                Ok(C64::new(floor, 0.0))
            } else {
                Ok(pivot)
            }
        })
        .expect("perturbed factorization cannot fail")
    }

    fn factor_with(a: &CMatrix, mut pivot_fix: impl FnMut(usize, C64) -> Result<C64>) -> Result<Lu> {
        let n = a.rows;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| lu[(i, k)].norm().total_cmp(&lu[(j, k)].norm()))
                .unwrap_or(k);
            if p != k {
                lu.swap_rows(p, k);
                perm.swap(p, k);
            }
            let pivot = pivot_fix(k, lu[(k, k)])?;
            lu[(k, k)] = pivot;
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor == C64::zero() {
                    continue;
                }
                for j in k + 1..n {
                    let ukj = lu[(k, j)];
                    lu[(i, j)] -= factor * ukj;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.lu.rows;
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &CMatrix) -> Result<CMatrix> {
        let n = self.lu.rows;
        if b.rows != n {
            return Err(Error::DimensionMismatch {
                expected: (n, b.cols),
                actual: (b.rows, b.cols),
            });
        }
        let mut out = CMatrix::zeros(n, b.cols);
        for c in 0..b.cols {
            let x = self.solve_vec(&b.column(c));
            for (r, v) in x.into_iter().enumerate() {
                out[(r, c)] = v;
            }
        }
        Ok(out)
    }
}

/// Solves `A X = B` by pivoted LU.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    Lu::factor(a)?.solve(b)
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    solve(a, &CMatrix::identity(a.rows))
}

/// `||A||_1 * ||A^-1||_1`.
pub fn condition_estimate(a: &CMatrix, a_inv: &CMatrix) -> f64 {
    a.norm1() * a_inv.norm1()
}

/// Eigenvalues and eigenvector matrix of a diagonalizable matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<C64>,
    /// Columns are eigenvectors.
    pub t: CMatrix,
    pub t_inv: CMatrix,
    /// `||T||_1 ||T^-1||_1`.
    pub cond_t: f64,
    /// Smallest pairwise eigenvalue distance; infinite for `d = 1`.
    pub min_gap: f64,
}

impl EigenDecomposition {
    /// Assembles a decomposition from already-known parts, filling in the
    /// conditioning data.
    pub fn from_parts(eigenvalues: Vec<C64>, t: CMatrix, t_inv: CMatrix) -> Self {
        let cond_t = condition_estimate(&t, &t_inv);
        let min_gap = min_pairwise_gap(&eigenvalues);
        EigenDecomposition {
            eigenvalues,
            t,
            t_inv,
            cond_t,
            min_gap,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `T diag(lambda) T^-1`.
    pub fn reconstruct(&self) -> CMatrix {
        &self.t.scale_columns(&self.eigenvalues) * &self.t_inv
    }

    /// `||T^-1 Q T - diag(lambda)||_F`.
    pub fn diagonalization_residual(&self, q: &CMatrix) -> f64 {
        let d = &(&self.t_inv * q) * &self.t;
        frobenius(&(&d - &CMatrix::from_diag(&self.eigenvalues)))
    }
}

pub fn min_pairwise_gap(values: &[C64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

/// True iff the eigenvalues are separated by more than `tol * max(1, max |lambda|)`.
pub fn check_distinct(dec: &EigenDecomposition, tol: f64) -> bool {
    dec.min_gap > distinct_threshold(&dec.eigenvalues, tol)
}

pub(crate) fn distinct_threshold(eigenvalues: &[C64], tol: f64) -> f64 {
    tol * eigenvalues.iter().fold(1.0f64, |m, z| m.max(z.norm()))
}

/// Eigenvalues of a square matrix, sorted by real then imaginary part.
pub fn eigenvalues(q: &CMatrix) -> Result<Vec<C64>> {
    if !q.is_square() {
        return Err(Error::NotSquare {
            rows: q.rows,
            cols: q.cols,
        });
    }
    if !q.is_finite() {
        return Err(Error::InvalidInput("matrix entries must be finite"));
    }
    let mut h = q.clone();
    balance(&mut h);
    reduce_to_hessenberg(&mut h);
    let mut eigs = hessenberg_qr(&mut h)?;
    let quantum = ordering_quantum(&eigs);
    eigs.sort_by(|a, b| quantized_cmp(*a, *b, quantum));
    Ok(eigs)
}

/// Full eigendecomposition: eigenvalues from Hessenberg QR, eigenvectors by
/// inverse iteration on the original matrix.
pub fn eig(q: &CMatrix) -> Result<EigenDecomposition> {
    let eigs = eigenvalues(q)?;
    eig_with_eigenvalues(q, eigs)
}

/// Completes a decomposition from eigenvalues already computed by [`eigenvalues`].
pub fn eig_with_eigenvalues(q: &CMatrix, eigs: Vec<C64>) -> Result<EigenDecomposition> {
    let n = q.rows;
    if eigs.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: eigs.len(),
        });
    }
    let qnorm = q.norm1().max(f64::MIN_POSITIVE);
    let mut t = CMatrix::zeros(n, n);
    for (c, &lambda) in eigs.iter().enumerate() {
        let v = inverse_iteration(q, lambda, qnorm, c)?;
        for (r, x) in v.into_iter().enumerate() {
            t[(r, c)] = x;
        }
    }
    let t_inv = inverse(&t).map_err(|_| Error::NumericalFailure("eigenvector matrix is singular"))?;
    Ok(EigenDecomposition::from_parts(eigs, t, t_inv))
}

fn inverse_iteration(q: &CMatrix, lambda: C64, qnorm: f64, seed: usize) -> Result<Vec<C64>> {
    let n = q.rows;
    let mut shifted = q.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let lu = Lu::factor_perturbed(&shifted, f64::EPSILON * qnorm);
    // Deterministic start vector with no special alignment to any eigenvector.
    let mut x: Vec<C64> = (0..n)
        .map(|i| {
            let t = (i + seed) as f64;
            C64::new(1.0 + 0.37 * t.sin(), 0.21 * (1.3 * t).cos())
        })
        .collect();
    normalize(&mut x);
    let tol = 1e2 * f64::EPSILON * qnorm * n as f64;
    for _ in 0..8 {
        x = lu.solve_vec(&x);
        if x.iter().any(|z| !z.is_finite()) {
            return Err(Error::NumericalFailure("inverse iteration diverged"));
        }
        normalize(&mut x);
        let residual: f64 = (0..n)
            .map(|r| {
                let qx: C64 = q.row(r).iter().zip(&x).map(|(a, b)| a * b).sum();
                (qx - lambda * x[r]).norm_sqr()
            })
            .sum::<f64>()
            .sqrt();
        if residual <= tol {
            break;
        }
    }
    fix_phase(&mut x);
    Ok(x)
}

fn normalize(x: &mut [C64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in x.iter_mut() {
            *z /= norm;
        }
    }
}

/// Rotates `x` so that its first non-negligible component is real positive.
fn fix_phase(x: &mut [C64]) {
    let max = x.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if let Some(lead) = x.iter().find(|z| z.norm() > 1e-8 * max).copied() {
        let phase = lead.conj() / lead.norm();
        for z in x.iter_mut() {
            *z *= phase;
        }
    }
}

/// Diagonal similarity scaling by powers of two to equalize row and column
/// norms. Leaves eigenvalues unchanged.
fn balance(a: &mut CMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn reduce_to_hessenberg(a: &mut CMatrix) {
    let n = a.rows;
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            C64::one()
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // A <- (I - beta v v^H) A
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(i, vi)| vi.conj() * a[(k + 1 + i, j)]).sum();
            let s = s * beta;
            for (i, vi) in v.iter().enumerate() {
                a[(k + 1 + i, j)] -= vi * s;
            }
        }
        // A <- A (I - beta v v^H)
        for r in 0..n {
            let s: C64 = v.iter().enumerate().map(|(j, vj)| a[(r, k + 1 + j)] * vj).sum();
            let s = s * beta;
            for (j, vj) in v.iter().enumerate() {
                a[(r, k + 1 + j)] -= s * vj.conj();
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = C64::zero();
        }
    }
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let an = a.norm();
    if b == C64::zero() {
        return (1.0, C64::zero());
    }
    if an == 0.0 {
        return (0.0, b.conj() / b.norm());
    }
    let r = an.hypot(b.norm());
    (an / r, (a / an) * b.conj() / r)
}

/// Single-shift QR iteration with deflation on an upper Hessenberg matrix.
/// Returns eigenvalues in deflation order.
fn hessenberg_qr(h: &mut CMatrix) -> Result<Vec<C64>> {
    let n = h.rows;
    let mut eigs = vec![C64::zero(); n];
    let hnorm = h.norm1().max(f64::MIN_POSITIVE);
    let max_iter = 30 * n.max(10);
    let mut hi = n;
    let mut iter = 0usize;
    let mut rotations: Vec<(f64, C64)> = Vec::with_capacity(n);

    while hi > 0 {
        // Locate the start of the active unreduced block.
        let mut lo = hi - 1;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = C64::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            eigs[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > max_iter {
            return Err(Error::NumericalFailure("QR iteration did not converge"));
        }

        let m = hi - 1;
        let shift = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            h[(m, m)] + C64::new(0.75 * h[(m, m - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(m - 1, m - 1)], h[(m - 1, m)], h[(m, m - 1)], h[(m, m)])
        };

        for i in lo..hi {
            h[(i, i)] -= shift;
        }
        rotations.clear();
        for k in lo..hi - 1 {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rotations.push((c, s));
            for j in k..hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = C64::zero();
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + idx;
            for r in lo..=(k + 1) {
                let x = h[(r, k)];
                let y = h[(r, k + 1)];
                h[(r, k)] = x * c + y * s.conj();
                h[(r, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..hi {
            h[(i, i)] += shift;
        }
    }
    Ok(eigs)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let diff = (a - d) * 0.5;
    let disc = (diff * diff + b * c).sqrt();
    let e1 = half_tr + disc;
    let e2 = half_tr - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}
