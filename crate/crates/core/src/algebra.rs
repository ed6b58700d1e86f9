//! The commutant `C(Q)` of a matrix `Q` with distinct eigenvalues.
//!
//! Every member `A` satisfies `T^-1 A T = diag(f_A(lambda_1), ..., f_A(lambda_d))`
//! where `T` diagonalizes `Q` and `f_A` is the representation polynomial
//! (`A = f_A(Q)`, degree below `d`). The diagonal vector is called the
//! diag-coordinates of `A`; in these coordinates the algebra product is
//! elementwise.

use alloc::vec::Vec;
use core::cell::OnceCell;
use core::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::linalg::{self, check_distinct, distinct_threshold, frobenius, CMatrix, EigenDecomposition};
use crate::poly::Polynomial;
use crate::{Error, Result, C64, DEFAULT_MEMBER_TOL};

/// Where a context's diagonalizer came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Generic,
    WeightedCirculant,
    Circulant,
    Companion,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Generic => "generic",
            Provenance::WeightedCirculant => "weighted-circulant",
            Provenance::Circulant => "circulant",
            Provenance::Companion => "companion",
        }
    }
}

/// A matrix `Q` together with a verified diagonalization `T^-1 Q T = diag(lambda)`.
#[derive(Debug, Clone)]
pub struct QContext {
    q: CMatrix,
    dec: EigenDecomposition,
    distinct_tol: f64,
    member_tol: f64,
    provenance: Provenance,
}

/// Diagonalizes `q` with the general eigensolver.
pub fn make_context(q: &CMatrix, distinct_tol: f64) -> Result<QContext> {
    QContext::new(q, distinct_tol)
}

impl QContext {
    pub fn new(q: &CMatrix, distinct_tol: f64) -> Result<QContext> {
        if !q.is_square() {
            return Err(Error::NotSquare {
                rows: q.rows(),
                cols: q.cols(),
            });
        }
        if q.rows() == 0 {
            return Err(Error::InvalidInput("Q must be at least 1x1"));
        }
        let eigs = linalg::eigenvalues(q)?;
        let min_gap = linalg::min_pairwise_gap(&eigs);
        let threshold = distinct_threshold(&eigs, distinct_tol);
        if !(min_gap > threshold) {
            return Err(Error::NotDistinctEigenvalues { min_gap, threshold });
        }
        let dec = linalg::eig_with_eigenvalues(q, eigs)?;
        let ctx = Self::from_decomposition(q.clone(), dec, distinct_tol, Provenance::Generic)?;
        let tol = 1e-8 * (1.0 + q.frobenius()) * ctx.dec.cond_t;
        let residual = frobenius(&(&(q * &ctx.dec.t) - &ctx.dec.t.scale_columns(&ctx.dec.eigenvalues)));
        if !(residual <= tol) {
            return Err(Error::NumericalFailure("eigendecomposition residual too large"));
        }
        Ok(ctx)
    }

    /// Wraps a decomposition obtained elsewhere (for example in closed form),
    /// checking only dimensions and eigenvalue separation.
    pub fn from_decomposition(
        q: CMatrix,
        dec: EigenDecomposition,
        distinct_tol: f64,
        provenance: Provenance,
    ) -> Result<QContext> {
        let d = q.rows();
        if !q.is_square() {
            return Err(Error::NotSquare { rows: d, cols: q.cols() });
        }
        for m in [&dec.t, &dec.t_inv] {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: (d, d),
                    actual: (m.rows(), m.cols()),
                });
            }
        }
        if dec.eigenvalues.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                actual: dec.eigenvalues.len(),
            });
        }
        if !check_distinct(&dec, distinct_tol) {
            return Err(Error::NotDistinctEigenvalues {
                min_gap: dec.min_gap,
                threshold: distinct_threshold(&dec.eigenvalues, distinct_tol),
            });
        }
        Ok(QContext {
            q,
            dec,
            distinct_tol,
            member_tol: DEFAULT_MEMBER_TOL,
            provenance,
        })
    }

    /// Overrides the relative tolerance used by membership checks.
    pub fn with_member_tol(mut self, tol: f64) -> Self {
        self.member_tol = tol;
        self
    }

    pub fn q(&self) -> &CMatrix {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.rows()
    }

    pub fn eigenvalues(&self) -> &[C64] {
        &self.dec.eigenvalues
    }

    pub fn t(&self) -> &CMatrix {
        &self.dec.t
    }

    pub fn t_inv(&self) -> &CMatrix {
        &self.dec.t_inv
    }

    pub fn decomposition(&self) -> &EigenDecomposition {
        &self.dec
    }

    pub fn cond_t(&self) -> f64 {
        self.dec.cond_t
    }

    pub fn min_gap(&self) -> f64 {
        self.dec.min_gap
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn distinct_tol(&self) -> f64 {
        self.distinct_tol
    }

    pub fn member_tol(&self) -> f64 {
        self.member_tol
    }

    /// `||T^-1 Q T - diag(lambda)||_F`.
    pub fn diagonalization_residual(&self) -> f64 {
        self.dec.diagonalization_residual(&self.q)
    }

    fn check_dim(&self, a: &CMatrix) -> Result<()> {
        let d = self.dim();
        if a.rows() != d || a.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: (d, d),
                actual: (a.rows(), a.cols()),
            });
        }
        Ok(())
    }

    /// `||AQ - QA||_F / ((1 + ||A||_F)(1 + ||Q||_F))`.
    pub fn relative_commutator(&self, a: &CMatrix) -> Result<f64> {
        self.check_dim(a)?;
        let comm = frobenius(&a.commutator(&self.q)?);
        Ok(comm / ((1.0 + a.frobenius()) * (1.0 + self.q.frobenius())))
    }

    pub fn is_member(&self, a: &CMatrix, tol: f64) -> Result<bool> {
        Ok(self.relative_commutator(a)? <= tol)
    }

    fn require_member(&self, a: &CMatrix) -> Result<()> {
        let commutator = self.relative_commutator(a)?;
        if commutator <= self.member_tol {
            Ok(())
        } else {
            Err(Error::NotMember { commutator })
        }
    }

    /// Diagonal of `T^-1 A T`. The off-diagonal mass is reported rather
    /// than rejected; membership itself is checked through the commutator.
    pub fn diag_coords(&self, a: &CMatrix) -> Result<DiagCoords> {
        self.require_member(a)?;
        let conj = &(&self.dec.t_inv * a) * &self.dec.t;
        let values = conj.diagonal();
        let off_diagonal = frobenius(&(&conj - &CMatrix::from_diag(&values)));
        Ok(DiagCoords { values, off_diagonal })
    }

    /// `T diag(u) T^-1`.
    pub fn from_diag_coords(&self, u: &[C64]) -> Result<CMatrix> {
        if u.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: u.len(),
            });
        }
        Ok(&self.dec.t.scale_columns(u) * &self.dec.t_inv)
    }

    /// `p(Q)`. Polynomials of degree below `d` are evaluated directly as
    /// `sum p_j Q^j`; higher degrees go through the eigenvalues, which is the
    /// same matrix on `C(Q)` and avoids forming `Q^d`.
    pub fn from_repr_poly(&self, p: &Polynomial) -> CMatrix {
        let d = self.dim();
        match p.degree() {
            None => CMatrix::zeros(d, d),
            Some(deg) if deg < d => {
                let coeffs = p.coeffs();
                let mut acc = CMatrix::identity(d).scale(coeffs[deg]);
                for &c in coeffs[..deg].iter().rev() {
                    acc = &acc * &self.q;
                    for i in 0..d {
                        acc[(i, i)] += c;
                    }
                }
                acc
            }
            Some(_) => {
                let u: Vec<C64> = self.dec.eigenvalues.iter().map(|&l| p.eval(l)).collect();
                self.from_diag_coords(&u).expect("length matches dimension")
            }
        }
    }

    /// Representation polynomial of a member, recovered by interpolating its
    /// diag-coordinates through the eigenvalues.
    pub fn repr_poly(&self, a: &CMatrix) -> Result<ReprPoly> {
        let coords = self.diag_coords(a)?;
        let rel_off = coords.off_diagonal / (1.0 + a.frobenius());
        if rel_off > self.member_tol * self.dec.cond_t.max(1.0) {
            return Err(Error::NotMember { commutator: rel_off });
        }
        let (poly, vandermonde_cond) = self.interpolate(&coords.values)?;
        let reconstruction = self.from_repr_poly(&poly);
        let reconstruction_residual = frobenius(&(&reconstruction - a));
        Ok(ReprPoly {
            poly,
            reconstruction_residual,
            vandermonde_cond,
            off_diagonal: coords.off_diagonal,
        })
    }

    /// The polynomial of degree below `d` taking `values[i]` at `lambda_i`,
    /// with the Vandermonde condition estimate.
    pub fn interpolate(&self, values: &[C64]) -> Result<(Polynomial, f64)> {
        if values.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: values.len(),
            });
        }
        let coeffs = solve_vandermonde(&self.dec.eigenvalues, values)?;
        let cond = vandermonde_condition(&self.dec.eigenvalues);
        Ok((Polynomial::new(coeffs), cond))
    }

    pub fn element(&self, coords: Vec<C64>) -> Result<AlgebraElement<'_>> {
        AlgebraElement::new(self, coords)
    }
}

/// Diag-coordinates of a member plus the off-diagonal residue of `T^-1 A T`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagCoords {
    pub values: Vec<C64>,
    pub off_diagonal: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReprPoly {
    pub poly: Polynomial,
    /// `||sum a_i Q^i - A||_F`.
    pub reconstruction_residual: f64,
    pub vandermonde_cond: f64,
    pub off_diagonal: f64,
}

impl ReprPoly {
    pub const ILL_CONDITIONED: f64 = 1e10;

    pub fn is_ill_conditioned(&self) -> bool {
        !(self.vandermonde_cond < Self::ILL_CONDITIONED)
    }
}

/// `V[i][j] = nodes[i]^j`.
pub fn vandermonde_matrix(nodes: &[C64]) -> CMatrix {
    let n = nodes.len();
    let mut v = CMatrix::zeros(n, n);
    for (i, &x) in nodes.iter().enumerate() {
        let mut p = C64::one();
        for j in 0..n {
            v[(i, j)] = p;
            p *= x;
        }
    }
    v
}

/// `||V||_1 ||V^-1||_1`, infinite when `V` is numerically singular.
pub fn vandermonde_condition(nodes: &[C64]) -> f64 {
    let v = vandermonde_matrix(nodes);
    match linalg::inverse(&v) {
        Ok(inv) => linalg::condition_estimate(&v, &inv),
        Err(_) => f64::INFINITY,
    }
}

/// Coefficients `a` with `sum_j a_j nodes[i]^j = values[i]`, by the
/// Björck–Pereyra divided-difference scheme. Falls back to pivoted LU when
/// two nodes nearly coincide.
pub fn solve_vandermonde(nodes: &[C64], values: &[C64]) -> Result<Vec<C64>> {
    let n = nodes.len();
    if values.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: values.len(),
        });
    }
    let scale = nodes.iter().fold(1.0f64, |m, z| m.max(z.norm()));
    if linalg::min_pairwise_gap(nodes) <= 1e-14 * scale {
        let v = vandermonde_matrix(nodes);
        let rhs = CMatrix::from_fn(n, 1, |r, _| values[r]);
        return Ok(linalg::solve(&v, &rhs)?.column(0));
    }
    let mut c = values.to_vec();
    // Newton divided differences.
    for k in 0..n.saturating_sub(1) {
        for i in (k + 1..n).rev() {
            c[i] = (c[i] - c[i - 1]) / (nodes[i] - nodes[i - k - 1]);
        }
    }
    // Newton form to monomial form.
    for k in (0..n.saturating_sub(1)).rev() {
        for i in k..n - 1 {
            let next = c[i + 1];
            c[i] -= nodes[k] * next;
        }
    }
    Ok(c)
}

/// A member of `C(Q)` held in diag-coordinates, with its matrix computed on
/// first use.
#[derive(Debug, Clone)]
pub struct AlgebraElement<'a> {
    ctx: &'a QContext,
    coords: Vec<C64>,
    matrix_cache: OnceCell<CMatrix>,
}

impl<'a> AlgebraElement<'a> {
    pub fn new(ctx: &'a QContext, coords: Vec<C64>) -> Result<Self> {
        if coords.len() != ctx.dim() {
            return Err(Error::LengthMismatch {
                expected: ctx.dim(),
                actual: coords.len(),
            });
        }
        Ok(AlgebraElement {
            ctx,
            coords,
            matrix_cache: OnceCell::new(),
        })
    }

    pub fn from_matrix(ctx: &'a QContext, a: &CMatrix) -> Result<Self> {
        let coords = ctx.diag_coords(a)?.values;
        let element = Self::new(ctx, coords)?;
        let _ = element.matrix_cache.set(a.clone());
        Ok(element)
    }

    pub fn identity(ctx: &'a QContext) -> Self {
        Self::new(ctx, alloc::vec![C64::one(); ctx.dim()]).expect("length matches")
    }

    pub fn zero(ctx: &'a QContext) -> Self {
        Self::new(ctx, alloc::vec![C64::zero(); ctx.dim()]).expect("length matches")
    }

    pub fn coords(&self) -> &[C64] {
        &self.coords
    }

    pub fn context(&self) -> &'a QContext {
        self.ctx
    }

    pub fn matrix(&self) -> &CMatrix {
        self.matrix_cache
            .get_or_init(|| self.ctx.from_diag_coords(&self.coords).expect("length matches"))
    }

    pub fn repr_poly(&self) -> Result<Polynomial> {
        Ok(self.ctx.interpolate(&self.coords)?.0)
    }

    pub fn pow(&self, k: u32) -> AlgebraElement<'a> {
        let coords = self.coords.iter().map(|z| z.powu(k)).collect();
        Self::new(self.ctx, coords).expect("length matches")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> AlgebraElement<'a> {
        assert!(core::ptr::eq(self.ctx, other.ctx), "elements of different algebras");
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.ctx, coords).expect("length matches")
    }
}

impl<'a> Add for &AlgebraElement<'a> {
    type Output = AlgebraElement<'a>;

    fn add(self, rhs: Self) -> AlgebraElement<'a> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Mul for &AlgebraElement<'a> {
    type Output = AlgebraElement<'a>;

    fn mul(self, rhs: Self) -> AlgebraElement<'a> {
        self.zip_with(rhs, |a, b| a * b)
    }
}
