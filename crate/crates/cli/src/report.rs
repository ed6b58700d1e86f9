//! Text and JSON reports.
//!
//! JSON numbers are written with the shortest decimal form that parses back
//! to the same `f64`, so reading a report reproduces every value exactly.

use std::fmt::Write as _;

use qcomm_core::{CMatrix, MatrixPolyEquation, QContext, SolutionSet, Warning, C64};
use serde::{Deserialize, Serialize};

use crate::problem::SCHEMA;
use crate::wire::{matrix_to_wire, to_wire, Complex, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootReport {
    pub root: Complex,
    pub multiplicity: usize,
    pub radius: f64,
    pub member_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub indices: Vec<usize>,
    pub u: Vec<Complex>,
    pub x: Matrix,
    pub residual: f64,
    pub relative_residual: f64,
    pub relative_commutator: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarningReport {
    pub kind: String,
    pub message: String,
}

impl From<&Warning> for WarningReport {
    fn from(w: &Warning) -> Self {
        let kind = match w {
            Warning::ResidualExceeded { .. } => "residual_exceeded",
            Warning::CommutatorExceeded { .. } => "commutator_exceeded",
            Warning::NearTolerance { .. } => "near_tolerance",
            Warning::IllConditionedTransform { .. } => "ill_conditioned_transform",
            Warning::Truncated { .. } => "truncated",
        };
        WarningReport {
            kind: kind.into(),
            message: w.message(),
        }
    }
}

/// Machine-readable form of a solved problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSetReport {
    pub schema: String,
    pub provenance: String,
    pub dimension: usize,
    pub degree: usize,
    pub eigenvalues: Vec<Complex>,
    pub cond_t: f64,
    /// Ascending coefficients of each `g_i`.
    pub scalar_polys: Vec<Vec<Complex>>,
    pub distinct_roots: Vec<Vec<RootReport>>,
    pub counts: Vec<usize>,
    pub total: u128,
    pub truncated: bool,
    pub solutions: Vec<SolutionReport>,
    pub warnings: Vec<WarningReport>,
}

impl SolutionSetReport {
    pub fn new(eq: &MatrixPolyEquation, set: &SolutionSet) -> Self {
        let ctx = eq.context();
        SolutionSetReport {
            schema: SCHEMA.into(),
            provenance: ctx.provenance().as_str().into(),
            dimension: ctx.dim(),
            degree: eq.degree(),
            eigenvalues: to_wire(ctx.eigenvalues()),
            cond_t: ctx.cond_t(),
            scalar_polys: set.scalar_polys.iter().map(|g| to_wire(g.coeffs())).collect(),
            distinct_roots: set
                .distinct_roots
                .iter()
                .map(|cs| {
                    cs.iter()
                        .map(|c| RootReport {
                            root: c.representative.into(),
                            multiplicity: c.multiplicity,
                            radius: c.radius,
                            member_residual: c.member_residual,
                        })
                        .collect()
                })
                .collect(),
            counts: set.counts.clone(),
            total: set.total,
            truncated: set.is_truncated(),
            solutions: set
                .solutions
                .iter()
                .map(|s| SolutionReport {
                    indices: s.indices.clone(),
                    u: to_wire(&s.u),
                    x: matrix_to_wire(&s.x),
                    residual: s.residual,
                    relative_residual: s.relative_residual,
                    relative_commutator: s.relative_commutator,
                })
                .collect(),
            warnings: set.warnings.iter().map(WarningReport::from).collect(),
        }
    }
}

/// Shortest round-trip decimal with at most ten significant digits kept for
/// display. Values whose magnitude is at most `zero_tol` print as `0`.
pub fn fmt_real(x: f64, zero_tol: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x.abs() <= zero_tol || x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if !(1e-5..1e10).contains(&a) {
        let s = format!("{x:.9e}");
        let (mantissa, exp) = s.split_once('e').unwrap_or((&s, "0"));
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let digits = a.log10().floor() as i32;
    let decimals = (9 - digits).clamp(0, 15) as usize;
    let s = trim_zeros(&format!("{x:.decimals$}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn fmt_complex(z: C64, zero_tol: f64) -> String {
    let re = fmt_real(z.re, zero_tol);
    let im = fmt_real(z.im, zero_tol);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}-{}i", &im[1..]),
        _ => format!("{re}+{im}i"),
    }
}

fn scale_tol(values: impl IntoIterator<Item = C64>) -> f64 {
    1e-12 * values.into_iter().fold(1.0f64, |m, z| m.max(z.norm()))
}

/// Formats a list of scalars with a shared zero threshold.
pub fn fmt_scalars(v: &[C64]) -> Vec<String> {
    let tol = scale_tol(v.iter().copied());
    v.iter().map(|&z| fmt_complex(z, tol)).collect()
}

/// Polynomial with ascending coefficients, written from the leading term down.
pub fn fmt_poly(coeffs: &[C64]) -> String {
    let tol = scale_tol(coeffs.iter().copied());
    let mut out = String::new();
    for (j, &c) in coeffs.iter().enumerate().rev() {
        let text = fmt_complex(c, tol);
        if text == "0" {
            continue;
        }
        let monomial = match j {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{j}"),
        };
        let is_real = c.im.abs() <= tol;
        let (sign, body) = if is_real {
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, text),
            };
            let mag = if mag == "1" && j > 0 { String::new() } else { mag };
            (if neg { "-" } else { "+" }, mag)
        } else {
            ("+", format!("({text})"))
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        out.push_str(&body);
        out.push_str(&monomial);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Matrix rows with aligned columns, each line prefixed by `indent`.
pub fn fmt_matrix(m: &CMatrix, indent: &str) -> String {
    let tol = scale_tol(m.as_slice().iter().copied());
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(|&z| fmt_complex(z, tol)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push_str(indent);
        out.push('[');
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                out.push_str("  ");
            }
            let _ = write!(out, "{cell:>w$}", w = widths[c]);
        }
        out.push_str("]\n");
    }
    out
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn context_header(ctx: &QContext, out: &mut String) {
    let _ = writeln!(out, "provenance: {}", ctx.provenance().as_str());
    let _ = writeln!(out, "dimension: {}", ctx.dim());
    let _ = writeln!(out, "eigenvalues:");
    for (i, l) in fmt_scalars(ctx.eigenvalues()).iter().enumerate() {
        let _ = writeln!(out, "  lambda_{} = {l}", i + 1);
    }
}

pub fn solution_set_text(eq: &MatrixPolyEquation, set: &SolutionSet) -> String {
    let mut out = String::new();
    context_header(eq.context(), &mut out);
    let _ = writeln!(out, "degree: {}", eq.degree());
    let _ = writeln!(out, "scalar polynomials:");
    for (i, g) in set.scalar_polys.iter().enumerate() {
        let _ = writeln!(out, "  g_{}(x) = {}", i + 1, fmt_poly(g.coeffs()));
    }
    let _ = writeln!(out, "distinct roots:");
    for (i, cs) in set.distinct_roots.iter().enumerate() {
        let reps: Vec<C64> = cs.iter().map(|c| c.representative).collect();
        let parts: Vec<String> = fmt_scalars(&reps)
            .into_iter()
            .zip(cs)
            .map(|(r, c)| {
                if c.multiplicity > 1 {
                    format!("{r} (multiplicity {})", c.multiplicity)
                } else {
                    r
                }
            })
            .collect();
        let _ = writeln!(out, "  g_{}: {}", i + 1, parts.join(", "));
    }
    let _ = writeln!(out, "counts: {}", tuple(&set.counts));
    let _ = writeln!(out, "total: {}", set.total);
    if set.is_truncated() {
        let _ = writeln!(out, "listed: {} (truncated)", set.solutions.len());
    }
    for (k, s) in set.solutions.iter().enumerate() {
        let one_based: Vec<usize> = s.indices.iter().map(|i| i + 1).collect();
        let _ = writeln!(
            out,
            "solution {}: roots {}, residual {:.3e}, relative residual {:.3e}, relative commutator {:.3e}",
            k + 1,
            tuple(&one_based),
            s.residual,
            s.relative_residual,
            s.relative_commutator
        );
        out.push_str(&fmt_matrix(&s.x, "  "));
    }
    out
}
