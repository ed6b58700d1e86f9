//! Problem files (`"schema": "qcomm/1"`).
//!
//! ```json
//! {
//!   "schema": "qcomm/1",
//!   "q": { "companion": [[1, 0], [2, 0], [3, 0]] },
//!   "degree": 2,
//!   "coefficients": [
//!     { "repr_poly": [[-24, 0], [25, 0], [-6, 0]] },
//!     { "diag_coords": [[4, 0], [1, 0], [2, 0]] }
//!   ],
//!   "options": { "residual_tol": 1e-8 }
//! }
//! ```

use std::fs;
use std::path::Path;

use qcomm_core::algebra::make_context;
use qcomm_core::structured::{circulant_context, companion_context, weighted_circulant_context};
use qcomm_core::{
    CMatrix, ClusterOptions, Coefficient, EnumerationOrder, MatrixPolyEquation, Polynomial, QContext, SolveOptions,
    WeightedCirculantSpec, DEFAULT_DISTINCT_TOL, DEFAULT_MEMBER_TOL,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::wire::{scalars, square_matrix, Complex, Matrix};
use crate::CliError;

pub const SCHEMA: &str = "qcomm/1";

/// How `Q` is given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum QSpec {
    Matrix(Matrix),
    /// `k_1, ..., k_d`: superdiagonal `k_1..k_(d-1)` and corner `k_d`.
    WeightedCirculant(Vec<Complex>),
    /// First row of a circulant matrix.
    Circulant(Vec<Complex>),
    /// Eigenvalues of a companion matrix.
    Companion(Vec<Complex>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientSpec {
    Matrix(Matrix),
    ReprPoly(Vec<Complex>),
    DiagCoords(Vec<Complex>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Order {
    Lexicographic,
    Colexicographic,
}

impl From<Order> for EnumerationOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Lexicographic => EnumerationOrder::Lexicographic,
            Order::Colexicographic => EnumerationOrder::Colexicographic,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_rel_tol: Option<f64>,
    /// Relative coefficient noise assumed when merging multiple roots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_noise: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinct_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub member_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Order>,
}

impl ProblemOptions {
    /// Fields set in `other` take precedence.
    pub fn overridden_by(&self, other: &ProblemOptions) -> ProblemOptions {
        ProblemOptions {
            cluster_tol: other.cluster_tol.or(self.cluster_tol),
            cluster_rel_tol: other.cluster_rel_tol.or(self.cluster_rel_tol),
            cluster_noise: other.cluster_noise.or(self.cluster_noise),
            residual_tol: other.residual_tol.or(self.residual_tol),
            cap: other.cap.or(self.cap),
            distinct_tol: other.distinct_tol.or(self.distinct_tol),
            member_tol: other.member_tol.or(self.member_tol),
            truncate: other.truncate.or(self.truncate),
            order: other.order.or(self.order),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let tols = [
            ("cluster_tol", self.cluster_tol),
            ("cluster_rel_tol", self.cluster_rel_tol),
            ("cluster_noise", self.cluster_noise),
            ("residual_tol", self.residual_tol),
            ("distinct_tol", self.distinct_tol),
            ("member_tol", self.member_tol),
        ];
        for (name, value) in tols {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(CliError::Invalid(format!("{name} must be a finite non-negative number")));
                }
            }
        }
        if self.cap == Some(0) {
            return Err(CliError::Invalid("cap must be at least 1".into()));
        }
        Ok(())
    }

    pub fn solve_options(&self) -> SolveOptions {
        let defaults = SolveOptions::default();
        let cluster = ClusterOptions {
            tol_abs: self.cluster_tol,
            tol_rel: self.cluster_rel_tol.unwrap_or(defaults.cluster.tol_rel),
            noise: self.cluster_noise.unwrap_or(defaults.cluster.noise),
        };
        SolveOptions {
            cluster,
            residual_tol: self.residual_tol.unwrap_or(defaults.residual_tol),
            enumeration_cap: self.cap.unwrap_or(defaults.enumeration_cap),
            truncate: self.truncate.unwrap_or(defaults.truncate),
            order: self.order.map_or(defaults.order, Into::into),
        }
    }

    pub fn distinct_tol(&self) -> f64 {
        self.distinct_tol.unwrap_or(DEFAULT_DISTINCT_TOL)
    }

    pub fn member_tol(&self) -> f64 {
        self.member_tol.unwrap_or(DEFAULT_MEMBER_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub q: QSpec,
    pub degree: usize,
    pub coefficients: Vec<CoefficientSpec>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub options: ProblemOptions,
}

fn is_default(o: &ProblemOptions) -> bool {
    *o == ProblemOptions::default()
}

/// A file that only needs to provide `Q`. Problem files qualify too.
#[derive(Debug, Clone, Deserialize)]
pub struct QFile {
    pub schema: String,
    pub q: QSpec,
    #[serde(default)]
    pub options: Option<ProblemOptions>,
}

/// One matrix (`"matrix"`) or several (`"matrices"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Matrix>>,
}

fn check_schema(schema: &str) -> Result<(), CliError> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("unsupported schema {schema:?}, expected {SCHEMA:?}")))
    }
}

pub fn parse<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Parse {
        path: origin.to_string(),
        source,
    })
}

pub fn read<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, &path.display().to_string())
}

fn nonempty(v: &[Complex], what: &str) -> Result<Vec<qcomm_core::C64>, CliError> {
    if v.is_empty() {
        Err(CliError::Invalid(format!("{what} is empty")))
    } else {
        Ok(scalars(v))
    }
}

impl QSpec {
    pub fn context(&self, distinct_tol: f64, member_tol: f64) -> Result<QContext, CliError> {
        let ctx = match self {
            QSpec::Matrix(rows) => make_context(&square_matrix(rows, "q matrix")?, distinct_tol)?,
            QSpec::WeightedCirculant(w) => {
                let spec = WeightedCirculantSpec::new(nonempty(w, "weighted_circulant")?)?;
                weighted_circulant_context(&spec, distinct_tol)?.into_context()
            }
            QSpec::Circulant(c) => circulant_context(&nonempty(c, "circulant")?, distinct_tol)?.into_context(),
            QSpec::Companion(l) => companion_context(&nonempty(l, "companion")?, distinct_tol)?.into_context(),
        };
        Ok(ctx.with_member_tol(member_tol))
    }
}

impl QFile {
    pub fn context(&self) -> Result<QContext, CliError> {
        check_schema(&self.schema)?;
        let options = self.options.clone().unwrap_or_default();
        options.validate()?;
        self.q.context(options.distinct_tol(), options.member_tol())
    }
}

impl MatrixFile {
    pub fn single(&self) -> Result<CMatrix, CliError> {
        check_schema(&self.schema)?;
        match (&self.matrix, &self.matrices) {
            (Some(m), None) => square_matrix(m, "matrix"),
            _ => Err(CliError::Invalid("expected exactly one \"matrix\" field".into())),
        }
    }

    pub fn all(&self) -> Result<Vec<CMatrix>, CliError> {
        check_schema(&self.schema)?;
        match (&self.matrix, &self.matrices) {
            (Some(m), None) => Ok(vec![square_matrix(m, "matrix")?]),
            (None, Some(ms)) if !ms.is_empty() => ms
                .iter()
                .enumerate()
                .map(|(i, m)| square_matrix(m, &format!("matrix {}", i + 1)))
                .collect(),
            _ => Err(CliError::Invalid(
                "expected either a \"matrix\" field or a non-empty \"matrices\" field".into(),
            )),
        }
    }
}

impl ProblemFile {
    /// Builds the equation with `overrides` applied on top of the file's options.
    pub fn equation(&self, overrides: &ProblemOptions) -> Result<(MatrixPolyEquation, SolveOptions), CliError> {
        check_schema(&self.schema)?;
        if self.degree == 0 {
            return Err(CliError::Invalid("degree must be at least 1".into()));
        }
        if self.coefficients.len() != self.degree {
            return Err(CliError::Invalid(format!(
                "degree is {} but {} coefficients are given",
                self.degree,
                self.coefficients.len()
            )));
        }
        let options = self.options.overridden_by(overrides);
        options.validate()?;
        let ctx = self.q.context(options.distinct_tol(), options.member_tol())?;
        let d = ctx.dim();
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| -> Result<Coefficient, CliError> {
                let what = format!("coefficient {}", k + 1);
                Ok(match c {
                    CoefficientSpec::Matrix(m) => {
                        let a = square_matrix(m, &what)?;
                        if a.rows() != d {
                            return Err(CliError::Invalid(format!("{what} must be {d}x{d}")));
                        }
                        Coefficient::Matrix(a)
                    }
                    CoefficientSpec::ReprPoly(p) => Coefficient::ReprPoly(Polynomial::new(scalars(p))),
                    CoefficientSpec::DiagCoords(u) => Coefficient::DiagCoords(scalars(u)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let eq = MatrixPolyEquation::new(ctx, coeffs)?;
        Ok((eq, options.solve_options()))
    }
}
