use std::fmt::Write as _;
use std::path::Path;

use qcomm_core::linalg::frobenius;
use qcomm_core::{CMatrix, Error, QContext, C64};
use serde::{Deserialize, Serialize};

use crate::problem::{self, MatrixFile, ProblemFile, ProblemOptions, QFile};
use crate::report::{context_header, fmt_matrix, fmt_scalars, solution_set_text, SolutionSetReport};
use crate::wire::{matrix_to_wire, to_wire, Complex, Matrix};
use crate::{CliError, Report};

#[derive(Debug, Clone, Default)]
pub struct SolveArgs {
    pub json: bool,
    /// Command-line settings; these win over the file's `options`.
    pub overrides: ProblemOptions,
}

#[derive(Debug, Clone)]
pub struct CheckArgs {
    pub json: bool,
    /// Also require the candidates to coincide with the solver's solution set
    /// in any order.
    pub match_set: bool,
    /// Bound on `||X - Y||_F / (1 + ||Y||_F)` for matched pairs.
    pub match_tol: f64,
}

impl Default for CheckArgs {
    fn default() -> Self {
        CheckArgs {
            json: false,
            match_set: false,
            match_tol: 1e-7,
        }
    }
}

/// Built-in worked examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    /// `Q(1, 1, 8)` with eigenvalues `2, 2w^2, 2w`.
    WeightedCirculant,
    /// Companion matrix of `(x - 1)(x - 2)(x - 3)`.
    Companion,
}

impl Example {
    pub fn problem_json(self) -> &'static str {
        match self {
            Example::WeightedCirculant => include_str!("../fixtures/weighted-circulant.json"),
            Example::Companion => include_str!("../fixtures/companion.json"),
        }
    }

    /// The four printed solutions, as a matrix file.
    pub fn solutions_json(self) -> &'static str {
        match self {
            Example::WeightedCirculant => include_str!("../fixtures/weighted-circulant.solutions.json"),
            Example::Companion => include_str!("../fixtures/companion.solutions.json"),
        }
    }

    pub fn problem(self) -> ProblemFile {
        problem::parse(self.problem_json(), "built-in example").expect("built-in fixture parses")
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn solve_problem(problem: &ProblemFile, args: &SolveArgs) -> Result<Report, CliError> {
    let (eq, opts) = problem.equation(&args.overrides)?;
    let set = eq.solve(&opts)?;
    let stdout = if args.json {
        to_json(&SolutionSetReport::new(&eq, &set))
    } else {
        solution_set_text(&eq, &set)
    };
    Ok(Report {
        stdout,
        diagnostics: set.warnings.iter().map(|w| format!("warning: {w}")).collect(),
        passed: true,
    })
}

pub fn cmd_solve(path: &Path, args: &SolveArgs) -> Result<Report, CliError> {
    solve_problem(&problem::read(path)?, args)
}

pub fn cmd_example(example: Example, args: &SolveArgs) -> Result<Report, CliError> {
    solve_problem(&example.problem(), args)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub residual: f64,
    pub relative_residual: f64,
    pub commutator: f64,
    pub relative_commutator: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetMatchReport {
    pub candidates: usize,
    pub solutions: usize,
    /// `None` when the sizes differ.
    pub max_relative_difference: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub candidates: Vec<CandidateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_match: Option<SetMatchReport>,
    pub pass: bool,
}

/// Pairs the closest remaining matrices first and returns the largest
/// relative difference, or `None` when the sets differ in size.
pub fn match_sets(candidates: &[CMatrix], reference: &[CMatrix]) -> Option<f64> {
    if candidates.len() != reference.len() {
        return None;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(candidates.len() * reference.len());
    for (i, x) in candidates.iter().enumerate() {
        for (j, y) in reference.iter().enumerate() {
            let diff = x.try_sub(y).map(|m| frobenius(&m)).unwrap_or(f64::INFINITY);
            pairs.push((diff / (1.0 + frobenius(y)), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_c = vec![false; candidates.len()];
    let mut used_r = vec![false; reference.len()];
    let mut worst = 0.0f64;
    for (d, i, j) in pairs {
        if !used_c[i] && !used_r[j] {
            used_c[i] = true;
            used_r[j] = true;
            worst = worst.max(d);
        }
    }
    Some(worst)
}

pub fn check(problem: &ProblemFile, candidates: &[CMatrix], args: &CheckArgs) -> Result<Report, CliError> {
    let (eq, opts) = problem.equation(&ProblemOptions::default())?;
    let member_tol = eq.context().member_tol();
    let reports = candidates
        .iter()
        .map(|x| {
            let v = eq.verify_solution(x)?;
            Ok(CandidateReport {
                residual: v.residual,
                relative_residual: v.relative_residual,
                commutator: v.commutator,
                relative_commutator: v.relative_commutator,
                pass: v.relative_residual <= opts.residual_tol && v.relative_commutator <= member_tol,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let set_match = if args.match_set {
        let set = eq.solve(&opts)?;
        let xs: Vec<CMatrix> = set.solutions.into_iter().map(|s| s.x).collect();
        let diff = match_sets(candidates, &xs);
        Some(SetMatchReport {
            candidates: candidates.len(),
            solutions: xs.len(),
            max_relative_difference: diff,
            pass: diff.is_some_and(|d| d <= args.match_tol),
        })
    } else {
        None
    };
    let pass = reports.iter().all(|r| r.pass) && set_match.as_ref().is_none_or(|m| m.pass);
    let report = CheckReport {
        candidates: reports,
        set_match,
        pass,
    };
    let stdout = if args.json {
        to_json(&report)
    } else {
        let mut out = String::new();
        for (k, c) in report.candidates.iter().enumerate() {
            let _ = writeln!(
                out,
                "candidate {}: residual {:.3e} (relative {:.3e}), commutator {:.3e} (relative {:.3e}): {}",
                k + 1,
                c.residual,
                c.relative_residual,
                c.commutator,
                c.relative_commutator,
                if c.pass { "pass" } else { "fail" }
            );
        }
        if let Some(m) = &report.set_match {
            match m.max_relative_difference {
                Some(d) => {
                    let _ = writeln!(
                        out,
                        "set match: {} candidates, {} solutions, max relative difference {d:.3e}: {}",
                        m.candidates,
                        m.solutions,
                        if m.pass { "pass" } else { "fail" }
                    );
                }
                None => {
                    let _ = writeln!(
                        out,
                        "set match: {} candidates but {} solutions: fail",
                        m.candidates, m.solutions
                    );
                }
            }
        }
        let _ = writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" });
        out
    };
    Ok(Report {
        stdout,
        diagnostics: Vec::new(),
        passed: report.pass,
    })
}

pub fn cmd_check(problem_path: &Path, candidate_path: &Path, args: &CheckArgs) -> Result<Report, CliError> {
    let problem: ProblemFile = problem::read(problem_path)?;
    let candidates = problem::read::<MatrixFile>(candidate_path)?.all()?;
    check(&problem, &candidates, args)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReprReport {
    /// `a_0, ..., a_(d-1)`.
    pub coefficients: Vec<Complex>,
    pub reconstruction_residual: f64,
    pub vandermonde_cond: f64,
    pub ill_conditioned: bool,
}

pub fn repr(ctx: &QContext, a: &CMatrix, json: bool) -> Result<Report, CliError> {
    let d = ctx.dim();
    if a.rows() != d {
        return Err(Error::DimensionMismatch {
            expected: (d, d),
            actual: (a.rows(), a.cols()),
        }
        .into());
    }
    let rp = match ctx.repr_poly(a) {
        Ok(rp) => rp,
        Err(Error::NotMember { .. }) => {
            let commutator = frobenius(&a.commutator(ctx.q())?);
            return Err(CliError::NotMember { commutator });
        }
        Err(e) => return Err(e.into()),
    };
    let mut coeffs = rp.poly.coeffs().to_vec();
    coeffs.resize(d, C64::new(0.0, 0.0));
    let report = ReprReport {
        coefficients: to_wire(&coeffs),
        reconstruction_residual: rp.reconstruction_residual,
        vandermonde_cond: rp.vandermonde_cond,
        ill_conditioned: rp.is_ill_conditioned(),
    };
    let mut diagnostics = Vec::new();
    if report.ill_conditioned {
        diagnostics.push(format!(
            "warning: Vandermonde matrix is ill-conditioned (cond {:e})",
            report.vandermonde_cond
        ));
    }
    let stdout = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "representation polynomial coefficients:");
        for (i, a) in fmt_scalars(&coeffs).iter().enumerate() {
            let _ = writeln!(out, "  a_{i} = {a}");
        }
        let _ = writeln!(out, "reconstruction residual: {:.3e}", report.reconstruction_residual);
        let _ = writeln!(out, "vandermonde condition: {:.3e}", report.vandermonde_cond);
        out
    };
    Ok(Report {
        stdout,
        diagnostics,
        passed: true,
    })
}

pub fn cmd_repr(q_path: &Path, a_path: &Path, json: bool) -> Result<Report, CliError> {
    let ctx = problem::read::<QFile>(q_path)?.context()?;
    let a = problem::read::<MatrixFile>(a_path)?.single()?;
    repr(&ctx, &a, json)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagReport {
    pub provenance: String,
    pub dimension: usize,
    pub eigenvalues: Vec<Complex>,
    pub cond_t: f64,
    pub min_gap: f64,
    /// `||T^-1 Q T - diag(lambda)||_F`.
    pub verification_residual: f64,
    pub q: Matrix,
    pub t: Matrix,
}

pub fn diag(ctx: &QContext, json: bool) -> Report {
    let report = DiagReport {
        provenance: ctx.provenance().as_str().into(),
        dimension: ctx.dim(),
        eigenvalues: to_wire(ctx.eigenvalues()),
        cond_t: ctx.cond_t(),
        min_gap: ctx.min_gap(),
        verification_residual: ctx.diagonalization_residual(),
        q: matrix_to_wire(ctx.q()),
        t: matrix_to_wire(ctx.t()),
    };
    let stdout = if json {
        to_json(&report)
    } else {
        let mut out = String::new();
        context_header(ctx, &mut out);
        let _ = writeln!(out, "cond_T: {:.3e}", report.cond_t);
        let _ = writeln!(out, "min gap: {:.3e}", report.min_gap);
        let _ = writeln!(out, "verification residual: {:.3e}", report.verification_residual);
        let _ = writeln!(out, "Q:");
        out.push_str(&fmt_matrix(ctx.q(), "  "));
        let _ = writeln!(out, "T:");
        out.push_str(&fmt_matrix(ctx.t(), "  "));
        out
    };
    Report {
        stdout,
        diagnostics: Vec::new(),
        passed: true,
    }
}

pub fn cmd_diag(q_path: &Path, json: bool) -> Result<Report, CliError> {
    let ctx = problem::read::<QFile>(q_path)?.context()?;
    Ok(diag(&ctx, json))
}
