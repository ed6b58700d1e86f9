//! Closed-form diagonalizers for structured `Q`.
//!
//! * Weighted circulants `Q(k_1, ..., k_d)` (superdiagonal `k_1..k_(d-1)`,
//!   corner `k_d`) are diagonalized by `T = Lambda F^-1`, where `F` is the
//!   unitary DFT matrix and `Lambda` a diagonal scaling built from the weights.
//! * Plain circulants share the diagonalizer `F^-1` and have eigenvalues given
//!   by a DFT of their first row.
//! * Companion matrices of `prod (x - lambda_i)` are diagonalized by the
//!   Vandermonde matrix in the `lambda_i`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;
use num_traits::{One, Zero};

use crate::algebra::{Provenance, QContext};
use crate::linalg::{self, distinct_threshold, frobenius, CMatrix, EigenDecomposition};
use crate::poly::Polynomial;
use crate::{Error, Result, C64};

/// Weights `k_1..k_d` of a weighted circulant, with `k = prod k_i` and the
/// principal `d`-th root `lambda` of `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCirculantSpec {
    weights: Vec<C64>,
    k: C64,
    lambda: C64,
}

impl WeightedCirculantSpec {
    pub fn new(weights: Vec<C64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("weighted circulant needs at least one weight"));
        }
        if let Some(i) = weights.iter().position(|w| *w == C64::zero()) {
            return Err(Error::ZeroWeight { index: i + 1 });
        }
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidInput("weights must be finite"));
        }
        let k: C64 = weights.iter().product();
        let d = weights.len() as f64;
        // Principal branch: argument in (-pi/d, pi/d].
        let lambda = C64::from_polar(k.norm().powf(1.0 / d), k.arg() / d);
        Ok(WeightedCirculantSpec { weights, k, lambda })
    }

    pub fn weights(&self) -> &[C64] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn k(&self) -> C64 {
        self.k
    }

    pub fn lambda(&self) -> C64 {
        self.lambda
    }
}

/// `omega^m` with `omega = exp(2 pi i / d)`, reducing `m` modulo `d` first.
pub fn root_of_unity(d: usize, m: i64) -> C64 {
    let r = m.rem_euclid(d as i64) as f64;
    C64::from_polar(1.0, 2.0 * PI * r / d as f64)
}

pub fn weighted_circulant_matrix(spec: &WeightedCirculantSpec) -> CMatrix {
    let d = spec.dim();
    let mut q = CMatrix::zeros(d, d);
    if d == 1 {
        q[(0, 0)] = spec.weights[0];
        return q;
    }
    for i in 0..d - 1 {
        q[(i, i + 1)] = spec.weights[i];
    }
    q[(d - 1, 0)] = spec.weights[d - 1];
    q
}

/// Unitary DFT matrix, `F[r][c] = omega^(rc) / sqrt(d)`.
pub fn dft_matrix(d: usize) -> CMatrix {
    let s = 1.0 / (d as f64).sqrt();
    CMatrix::from_fn(d, d, |r, c| root_of_unity(d, (r * c) as i64) * s)
}

/// Circulant matrix with first row `coeffs`, i.e. `sum_j coeffs[j] C_d^j`.
pub fn circulant_matrix(coeffs: &[C64]) -> CMatrix {
    let d = coeffs.len();
    CMatrix::from_fn(d, d, |r, c| coeffs[(c + d - r) % d])
}

/// Companion matrix with ones on the superdiagonal and last row
/// `-a_0, ..., -a_(d-1)` of the monic normalization of `f`.
pub fn companion_matrix(f: &Polynomial) -> Result<CMatrix> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::DegreeZero),
        Some(d) => d,
    };
    let lead = f.coeffs()[d];
    Ok(CMatrix::from_fn(d, d, |r, c| {
        if r + 1 == d {
            -f.coeffs()[c] / lead
        } else if c == r + 1 {
            C64::one()
        } else {
            C64::zero()
        }
    }))
}

/// `b^(i) = sum_j a_(j) omega^(-(i-1) j)` for 1-based `i`; equals
/// `f(omega^(d-i+1))` where `f` has coefficients `a`.
pub fn circulant_scalar_coeffs(a: &[C64], i: usize) -> C64 {
    let d = a.len();
    assert!((1..=d).contains(&i), "index must lie in 1..=d");
    a.iter()
        .enumerate()
        .map(|(j, &aj)| aj * root_of_unity(d, -(((i - 1) * j) as i64)))
        .sum()
}

/// All `b^(1..=d)` by direct summation.
pub fn circulant_diag_coords_direct(a: &[C64]) -> Vec<C64> {
    (1..=a.len()).map(|i| circulant_scalar_coeffs(a, i)).collect()
}

/// All `b^(1..=d)`, using a radix-2 FFT when `d` is a power of two.
pub fn circulant_diag_coords(a: &[C64]) -> Vec<C64> {
    if a.len() >= 4 && a.len().is_power_of_two() {
        let mut buf = a.to_vec();
        fft_forward(&mut buf);
        buf
    } else {
        circulant_diag_coords_direct(a)
    }
}

/// In-place forward DFT `X_k = sum_j x_j exp(-2 pi i jk / n)`; `n` must be a
/// power of two.
pub fn fft_forward(x: &mut [C64]) {
    let n = x.len();
    assert!(n.is_power_of_two(), "length must be a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            x.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let w = root_of_unity(len, -(k as i64));
                let u = x[start + k];
                let v = x[start + k + half] * w;
                x[start + k] = u + v;
                x[start + k + half] = u - v;
            }
        }
        len *= 2;
    }
}

/// Which closed form produced a structured context.
#[derive(Debug, Clone, PartialEq)]
pub enum StructuredKind {
    WeightedCirculant {
        spec: WeightedCirculantSpec,
        /// Diagonal of `Lambda`.
        scaling: Vec<C64>,
    },
    /// Circulant `Q` given by its first row.
    Circulant { coeffs: Vec<C64> },
    Companion {
        /// `prod (x - lambda_i)`.
        char_poly: Polynomial,
    },
}

/// A [`QContext`] whose `T`, `T^-1` and eigenvalues come from a closed form.
#[derive(Debug, Clone)]
pub struct StructuredContext {
    context: QContext,
    kind: StructuredKind,
    verification_residual: f64,
}

impl StructuredContext {
    pub fn context(&self) -> &QContext {
        &self.context
    }

    pub fn into_context(self) -> QContext {
        self.context
    }

    pub fn kind(&self) -> &StructuredKind {
        &self.kind
    }

    /// `||T^-1 Q T - diag(lambda)||_F` measured at construction.
    pub fn verification_residual(&self) -> f64 {
        self.verification_residual
    }
}

impl core::ops::Deref for StructuredContext {
    type Target = QContext;

    fn deref(&self) -> &QContext {
        &self.context
    }
}

/// Diagonal of `Lambda = (k / k_d) diag(1, lambda/k_1, lambda^2/(k_1 k_2), ...)`.
pub fn weighted_circulant_scaling(spec: &WeightedCirculantSpec) -> Vec<C64> {
    let d = spec.dim();
    let mut s = spec.k / spec.weights[d - 1];
    let mut out = Vec::with_capacity(d);
    out.push(s);
    for j in 1..d {
        s = s * spec.lambda / spec.weights[j - 1];
        out.push(s);
    }
    out
}

/// Eigenvalues in the order `lambda omega^d, lambda omega^(d-1), ..., lambda omega`.
pub fn weighted_circulant_eigenvalues(spec: &WeightedCirculantSpec) -> Vec<C64> {
    let d = spec.dim();
    (0..d).map(|i| spec.lambda * root_of_unity(d, (d - i) as i64)).collect()
}

pub fn weighted_circulant_context(
    spec: &WeightedCirculantSpec,
    distinct_tol: f64,
) -> Result<StructuredContext> {
    let d = spec.dim();
    let q = weighted_circulant_matrix(spec);
    let scaling = weighted_circulant_scaling(spec);
    let f = dft_matrix(d);
    // F is symmetric and unitary, so F^-1 = conj(F).
    let t = CMatrix::from_fn(d, d, |r, c| scaling[r] * f[(r, c)].conj());
    let t_inv = CMatrix::from_fn(d, d, |r, c| f[(r, c)] / scaling[c]);
    let eigenvalues = weighted_circulant_eigenvalues(spec);
    let dec = EigenDecomposition::from_parts(eigenvalues, t, t_inv);
    let residual = dec.diagonalization_residual(&q);
    let spread = scaling.iter().fold(0.0f64, |m, z| m.max(z.norm()))
        / scaling.iter().fold(f64::INFINITY, |m, z| m.min(z.norm()));
    if !(residual <= 1e-10 * (1.0 + spec.lambda.norm()) * spread) {
        return Err(Error::NumericalFailure("weighted circulant diagonalization check failed"));
    }
    let context = QContext::from_decomposition(q, dec, distinct_tol, Provenance::WeightedCirculant)?;
    Ok(StructuredContext {
        context,
        kind: StructuredKind::WeightedCirculant {
            spec: spec.clone(),
            scaling,
        },
        verification_residual: residual,
    })
}

/// Context for the circulant `Q` with first row `coeffs`: `T = F^-1` and
/// `lambda_i = b^(i)`.
pub fn circulant_context(coeffs: &[C64], distinct_tol: f64) -> Result<StructuredContext> {
    let d = coeffs.len();
    if d == 0 {
        return Err(Error::InvalidInput("circulant needs at least one coefficient"));
    }
    if coeffs.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidInput("coefficients must be finite"));
    }
    let q = circulant_matrix(coeffs);
    let f = dft_matrix(d);
    let t = f.conj_transpose();
    let eigenvalues = circulant_diag_coords(coeffs);
    let dec = EigenDecomposition::from_parts(eigenvalues, t, f);
    let residual = dec.diagonalization_residual(&q);
    let scale = coeffs.iter().map(|z| z.norm()).sum::<f64>();
    if !(residual <= 1e-10 * (1.0 + scale)) {
        return Err(Error::NumericalFailure("circulant diagonalization check failed"));
    }
    let context = QContext::from_decomposition(q, dec, distinct_tol, Provenance::Circulant)?;
    Ok(StructuredContext {
        context,
        kind: StructuredKind::Circulant {
            coeffs: coeffs.to_vec(),
        },
        verification_residual: residual,
    })
}

/// Context for the companion matrix of `prod (x - lambda_i)`, diagonalized
/// by `T[r][c] = lambda_c^r`. Eigenvalues keep the caller's order.
pub fn companion_context(lambdas: &[C64], distinct_tol: f64) -> Result<StructuredContext> {
    let d = lambdas.len();
    if d == 0 {
        return Err(Error::InvalidInput("companion context needs at least one eigenvalue"));
    }
    if lambdas.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidInput("eigenvalues must be finite"));
    }
    let min_gap = linalg::min_pairwise_gap(lambdas);
    let threshold = distinct_threshold(lambdas, distinct_tol);
    if min_gap <= threshold {
        return Err(Error::NotDistinctEigenvalues { min_gap, threshold });
    }
    let char_poly = Polynomial::from_roots(lambdas);
    let pi = companion_matrix(&char_poly)?;
    let mut t = CMatrix::zeros(d, d);
    for (c, &l) in lambdas.iter().enumerate() {
        let mut p = C64::one();
        for r in 0..d {
            t[(r, c)] = p;
            p *= l;
        }
    }
    let t_inv = linalg::inverse(&t)?;
    let dec = EigenDecomposition::from_parts(lambdas.to_vec(), t, t_inv);
    let residual = dec.diagonalization_residual(&pi);
    let max_l = lambdas.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if !(residual <= 1e-9 * (1.0 + max_l.powi(d as i32))) {
        return Err(Error::NumericalFailure("companion diagonalization check failed"));
    }
    let context = QContext::from_decomposition(pi, dec, distinct_tol, Provenance::Companion)?;
    Ok(StructuredContext {
        context,
        kind: StructuredKind::Companion { char_poly },
        verification_residual: residual,
    })
}

/// `||Lambda^-1 Q Lambda - lambda C_d||_F`.
pub fn scaling_conjugation_residual(spec: &WeightedCirculantSpec) -> f64 {
    let d = spec.dim();
    let q = weighted_circulant_matrix(spec);
    let scaling = weighted_circulant_scaling(spec);
    let inv: Vec<C64> = scaling.iter().map(|z| z.inv()).collect();
    let conj = q.scale_rows(&inv).scale_columns(&scaling);
    let ones = vec![C64::one(); d];
    let cd = weighted_circulant_matrix(&WeightedCirculantSpec::new(ones).expect("nonzero weights"));
    frobenius(&(&conj - &cd.scale(spec.lambda)))
}
