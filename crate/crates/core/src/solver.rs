//! Enumerates every solution of `X^n + A_1 X^(n-1) + ... + A_n = O` in `C(Q)`.
//!
//! In diag-coordinates the equation decouples: with `lambda_i` the eigenvalues
//! of `Q` and `f_k` the representation polynomial of `A_k`, `X = T diag(u) T^-1`
//! is a solution iff `g_i(u_i) = 0` for every `i`, where
//!
//! ```text
//! g_i(x) = x^n + f_1(lambda_i) x^(n-1) + ... + f_n(lambda_i).
//! ```
//!
//! The solution set is the Cartesian product of the distinct roots of the
//! `g_i`, so it has `prod n_i` elements (`n_i` distinct roots of `g_i`), never
//! more than `n^d`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::algebra::QContext;
use crate::linalg::{frobenius, CMatrix};
use crate::poly::{ClusterOptions, Polynomial, RootCluster};
use crate::structured::StructuredContext;
use crate::{Error, Result, C64};

/// One coefficient `A_k`, in any of the three equivalent forms.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Matrix(CMatrix),
    /// Representation polynomial `f_k`, so that `A_k = f_k(Q)`.
    ReprPoly(Polynomial),
    /// `(f_k(lambda_1), ..., f_k(lambda_d))` in the context's eigenvalue order.
    DiagCoords(Vec<C64>),
}

impl From<StructuredContext> for QContext {
    fn from(s: StructuredContext) -> QContext {
        s.into_context()
    }
}

#[derive(Debug, Clone)]
pub struct MatrixPolyEquation {
    ctx: QContext,
    coeffs: Vec<Coefficient>,
    /// `values[k][i] = f_(k+1)(lambda_i)`.
    values: Vec<Vec<C64>>,
    matrices: Vec<CMatrix>,
}

impl MatrixPolyEquation {
    /// Validates the coefficients (membership of matrices, lengths of
    /// coordinate vectors) and precomputes both their matrix form and their
    /// diag-coordinates.
    pub fn new(ctx: impl Into<QContext>, coeffs: Vec<Coefficient>) -> Result<Self> {
        let ctx = ctx.into();
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("equation degree must be at least 1"));
        }
        let d = ctx.dim();
        let mut values = Vec::with_capacity(coeffs.len());
        let mut matrices = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            match c {
                Coefficient::Matrix(a) => {
                    if !a.is_finite() {
                        return Err(Error::InvalidInput("coefficient entries must be finite"));
                    }
                    values.push(ctx.diag_coords(a)?.values);
                    matrices.push(a.clone());
                }
                Coefficient::ReprPoly(p) => {
                    if !p.is_finite() {
                        return Err(Error::InvalidInput("coefficient entries must be finite"));
                    }
                    values.push(ctx.eigenvalues().iter().map(|&l| p.eval(l)).collect());
                    matrices.push(ctx.from_repr_poly(p));
                }
                Coefficient::DiagCoords(u) => {
                    if u.len() != d {
                        return Err(Error::LengthMismatch {
                            expected: d,
                            actual: u.len(),
                        });
                    }
                    if u.iter().any(|z| !z.is_finite()) {
                        return Err(Error::InvalidInput("coefficient entries must be finite"));
                    }
                    values.push(u.clone());
                    matrices.push(ctx.from_diag_coords(u)?);
                }
            }
        }
        Ok(MatrixPolyEquation {
            ctx,
            coeffs,
            values,
            matrices,
        })
    }

    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    /// The degree `n`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[Coefficient] {
        &self.coeffs
    }

    /// `A_1, ..., A_n` as matrices.
    pub fn coefficient_matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `g_1, ..., g_d`, each monic of degree `n`.
    pub fn build_scalar_polys(&self) -> Vec<Polynomial> {
        let n = self.degree();
        (0..self.ctx.dim())
            .map(|i| {
                let mut coeffs = vec![C64::one(); n + 1];
                for (k, vals) in self.values.iter().enumerate() {
                    // f_(k+1)(lambda_i) multiplies x^(n-k-1).
                    coeffs[n - k - 1] = vals[i];
                }
                Polynomial::new(coeffs)
            })
            .collect()
    }

    fn max_coeff_norm(&self) -> f64 {
        self.matrices.iter().map(frobenius).fold(0.0, f64::max)
    }

    /// `(1 + ||X||_F)^n (1 + max_k ||A_k||_F)`.
    pub fn residual_scale(&self, x: &CMatrix) -> f64 {
        let n = self.degree() as i32;
        num_traits::Float::powi(1.0 + x.frobenius(), n) * (1.0 + self.max_coeff_norm())
    }

    /// Residual of the equation at `x`, evaluated as
    /// `((X + A_1) X + A_2) X + ... + A_n`, plus the commutator with `Q`.
    pub fn verify_solution(&self, x: &CMatrix) -> Result<Verification> {
        let d = self.ctx.dim();
        if x.rows() != d || x.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: (d, d),
                actual: (x.rows(), x.cols()),
            });
        }
        let mut acc = x + &self.matrices[0];
        for a in &self.matrices[1..] {
            acc = &(&acc * x) + a;
        }
        let residual = frobenius(&acc);
        let commutator = frobenius(&x.commutator(self.ctx.q())?);
        Ok(Verification {
            residual,
            relative_residual: residual / self.residual_scale(x),
            commutator,
            relative_commutator: commutator / ((1.0 + x.frobenius()) * (1.0 + self.ctx.q().frobenius())),
        })
    }

    /// Distinct roots of each `g_i` plus clustering diagnostics.
    fn scalar_roots(&self, opts: &SolveOptions) -> Result<ScalarRoots> {
        let polys = self.build_scalar_polys();
        let mut clusters = Vec::with_capacity(polys.len());
        let mut warnings = Vec::new();
        for (i, g) in polys.iter().enumerate() {
            let distinct = g.distinct_roots(&opts.cluster)?;
            if let Some(nt) = distinct.near_tolerance {
                warnings.push(Warning::NearTolerance {
                    poly: i + 1,
                    merged: nt.merged,
                    split: nt.split,
                });
            }
            clusters.push(distinct.clusters);
        }
        Ok((polys, clusters, warnings))
    }

    /// `n_i` for each `g_i` and their product.
    pub fn count_solutions(&self, opts: &SolveOptions) -> Result<(Vec<usize>, u128)> {
        let (_, clusters, _) = self.scalar_roots(opts)?;
        let counts: Vec<usize> = clusters.iter().map(Vec::len).collect();
        let total = product(&counts);
        Ok((counts, total))
    }

    pub fn solve(&self, opts: &SolveOptions) -> Result<SolutionSet> {
        let (scalar_polys, distinct_roots, mut warnings) = self.scalar_roots(opts)?;
        let counts: Vec<usize> = distinct_roots.iter().map(Vec::len).collect();
        let total = product(&counts);

        let enumerate = if total > opts.enumeration_cap as u128 {
            if !opts.truncate {
                return Err(Error::EnumerationCapExceeded {
                    total,
                    cap: opts.enumeration_cap,
                });
            }
            warnings.push(Warning::Truncated {
                total,
                cap: opts.enumeration_cap,
            });
            opts.enumeration_cap
        } else {
            total as usize
        };

        if self.ctx.cond_t() > ILL_CONDITIONED_TRANSFORM {
            warnings.push(Warning::IllConditionedTransform {
                cond_t: self.ctx.cond_t(),
            });
        }

        let reps: Vec<Vec<C64>> = distinct_roots
            .iter()
            .map(|cs| cs.iter().map(|c| c.representative).collect())
            .collect();
        let build = |m: usize| -> Result<Solution> {
            let indices = decode_index(m, &counts, opts.order);
            let u: Vec<C64> = indices.iter().enumerate().map(|(i, &j)| reps[i][j]).collect();
            let x = self.ctx.from_diag_coords(&u)?;
            let v = self.verify_solution(&x)?;
            Ok(Solution {
                indices,
                u,
                x,
                residual: v.residual,
                relative_residual: v.relative_residual,
                relative_commutator: v.relative_commutator,
            })
        };

        #[cfg(feature = "parallel")]
        let solutions: Vec<Solution> = {
            use rayon::prelude::*;
            (0..enumerate).into_par_iter().map(build).collect::<Result<_>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let solutions: Vec<Solution> = (0..enumerate).map(build).collect::<Result<_>>()?;

        for (idx, s) in solutions.iter().enumerate() {
            if !(s.relative_residual <= opts.residual_tol) {
                warnings.push(Warning::ResidualExceeded {
                    solution: idx,
                    relative_residual: s.relative_residual,
                });
            }
            if !(s.relative_commutator <= self.ctx.member_tol()) {
                warnings.push(Warning::CommutatorExceeded {
                    solution: idx,
                    relative_commutator: s.relative_commutator,
                });
            }
        }

        Ok(SolutionSet {
            scalar_polys,
            distinct_roots,
            counts,
            total,
            solutions,
            warnings,
        })
    }
}

type ScalarRoots = (Vec<Polynomial>, Vec<Vec<RootCluster>>, Vec<Warning>);

const ILL_CONDITIONED_TRANSFORM: f64 = 1e8;

fn product(counts: &[usize]) -> u128 {
    counts
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c as u128))
        .unwrap_or(u128::MAX)
}

fn decode_index(mut m: usize, counts: &[usize], order: EnumerationOrder) -> Vec<usize> {
    let d = counts.len();
    let mut idx = vec![0; d];
    match order {
        EnumerationOrder::Lexicographic => {
            for i in (0..d).rev() {
                idx[i] = m % counts[i];
                m /= counts[i];
            }
        }
        EnumerationOrder::Colexicographic => {
            for i in 0..d {
                idx[i] = m % counts[i];
                m /= counts[i];
            }
        }
    }
    idx
}

/// Order in which root-index tuples are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnumerationOrder {
    /// First index varies slowest.
    #[default]
    Lexicographic,
    /// First index varies fastest.
    Colexicographic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub cluster: ClusterOptions,
    /// Bound on `residual / residual_scale(X)` before a warning is raised.
    pub residual_tol: f64,
    pub enumeration_cap: usize,
    /// Enumerate only the first `enumeration_cap` solutions instead of failing.
    pub truncate: bool,
    pub order: EnumerationOrder,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            cluster: ClusterOptions::default(),
            residual_tol: 1e-8,
            enumeration_cap: 1_000_000,
            truncate: false,
            order: EnumerationOrder::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verification {
    /// `||X^n + A_1 X^(n-1) + ... + A_n||_F`.
    pub residual: f64,
    pub relative_residual: f64,
    /// `||XQ - QX||_F`.
    pub commutator: f64,
    pub relative_commutator: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Index of the chosen root cluster of each `g_i`.
    pub indices: Vec<usize>,
    pub u: Vec<C64>,
    pub x: CMatrix,
    pub residual: f64,
    pub relative_residual: f64,
    pub relative_commutator: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    ResidualExceeded { solution: usize, relative_residual: f64 },
    CommutatorExceeded { solution: usize, relative_commutator: f64 },
    /// Root clustering of `g_poly` (1-based) is close to its threshold.
    NearTolerance { poly: usize, merged: usize, split: usize },
    IllConditionedTransform { cond_t: f64 },
    Truncated { total: u128, cap: usize },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ResidualExceeded {
                solution,
                relative_residual,
            } => write!(f, "solution {solution}: relative residual {relative_residual:e} exceeds tolerance"),
            Warning::CommutatorExceeded {
                solution,
                relative_commutator,
            } => write!(f, "solution {solution}: relative commutator {relative_commutator:e} exceeds tolerance"),
            Warning::NearTolerance { poly, merged, split } => write!(
                f,
                "g_{poly}: root clustering is near its tolerance (merged count {merged}, split count {split})"
            ),
            Warning::IllConditionedTransform { cond_t } => {
                write!(f, "eigenvector matrix is ill-conditioned (cond {cond_t:e})")
            }
            Warning::Truncated { total, cap } => {
                write!(f, "enumeration truncated to {cap} of {total} solutions")
            }
        }
    }
}

impl Warning {
    pub fn message(&self) -> String {
        format!("{self}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    /// `g_1, ..., g_d`.
    pub scalar_polys: Vec<Polynomial>,
    /// Distinct roots of each `g_i`, sorted by real then imaginary part.
    pub distinct_roots: Vec<Vec<RootCluster>>,
    /// `n_i`.
    pub counts: Vec<usize>,
    /// `prod n_i`.
    pub total: u128,
    pub solutions: Vec<Solution>,
    pub warnings: Vec<Warning>,
}

impl SolutionSet {
    pub fn is_truncated(&self) -> bool {
        (self.solutions.len() as u128) < self.total
    }

    pub fn max_relative_residual(&self) -> f64 {
        self.solutions.iter().map(|s| s.relative_residual).fold(0.0, f64::max)
    }
}
