//! Polynomial matrix equations over a commutant algebra.
//!
//! Given a `d x d` complex matrix `Q` with `d` distinct eigenvalues, the set of
//! matrices commuting with `Q` is a commutative algebra spanned by
//! `I, Q, ..., Q^(d-1)`. Every member is simultaneously diagonalized by the
//! eigenvector matrix `T` of `Q`, so the monic equation
//!
//! ```text
//! X^n + A_1 X^(n-1) + ... + A_(n-1) X + A_n = O
//! ```
//!
//! with all `A_k` and `X` in that algebra splits into `d` scalar polynomial
//! equations `g_i(u) = 0`, one per eigenvalue. This crate finds all of them.
//!
//! The crate is `no_std` (it needs `alloc`). Enable the `parallel` feature to
//! enumerate large solution sets on a rayon pool.

#![no_std]

extern crate alloc;

#[cfg(feature = "std")]
extern crate std;

mod cmp;
mod error;

pub mod algebra;
pub mod linalg;
pub mod poly;
pub mod solver;
pub mod structured;

pub use num_complex::Complex64 as C64;

pub use algebra::{AlgebraElement, DiagCoords, Provenance, QContext, ReprPoly};
pub use error::{Error, Result};
pub use linalg::{CMatrix, EigenDecomposition};
pub use poly::{ClusterOptions, Polynomial, RootCluster};
pub use solver::{
    Coefficient, EnumerationOrder, MatrixPolyEquation, Solution, SolutionSet, SolveOptions,
    Verification, Warning,
};
pub use structured::{StructuredContext, StructuredKind, WeightedCirculantSpec};

/// Default relative tolerance for commutation (membership) checks.
pub const DEFAULT_MEMBER_TOL: f64 = 1e-8;

/// Default relative tolerance used to decide whether eigenvalues are distinct.
pub const DEFAULT_DISTINCT_TOL: f64 = 1e-8;
