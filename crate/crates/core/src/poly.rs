//! Dense complex polynomials in one variable.
//!
//! Coefficients are stored in ascending order: `coeffs[j]` multiplies `x^j`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;
use num_traits::{One, Zero};

use crate::cmp::{ordering_quantum, quantized_cmp};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![C64::zero(), C64::one()])
    }

    /// Monic polynomial with the given roots, expanded one linear factor at a time.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = vec![C64::one()];
        for &r in roots {
            let mut next = vec![C64::zero(); coeffs.len() + 1];
            for (j, &c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= r * c;
            }
            coeffs = next;
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<C64> {
        self.coeffs.last().copied()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &c)| c * j as f64)
                .collect(),
        )
    }

    pub fn scale_by(&self, s: C64) -> Polynomial {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|j| {
                    self.coeffs.get(j).copied().unwrap_or_default()
                        + other.coeffs.get(j).copied().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `max(1, max_j |c_j| / |leading|)`.
    pub fn scale(&self) -> f64 {
        match self.leading() {
            None => 1.0,
            Some(lead) => {
                let l = lead.norm();
                self.coeffs.iter().fold(1.0f64, |m, c| m.max(c.norm() / l))
            }
        }
    }

    /// Taylor coefficients about `at`: `t[j] = p^(j)(at) / j!`.
    pub fn taylor_coeffs(&self, at: C64) -> Vec<C64> {
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            // Synthetic division by (x - at) of the remaining quotient.
            for j in (k..n - 1).rev() {
                let next = work[j + 1];
                work[j] += at * next;
            }
            out.push(work[k]);
        }
        out
    }

    /// All `degree` roots with multiplicity: eigenvalues of the companion
    /// matrix followed by one Newton polishing pass.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let degree = match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::DegreeZero),
            Some(d) => d,
        };
        if !self.is_finite() {
            return Err(Error::InvalidInput("polynomial coefficients must be finite"));
        }
        let lead = self.coeffs[degree];
        let mut roots = if degree == 1 {
            vec![-self.coeffs[0] / lead]
        } else {
            let companion = CMatrix::from_fn(degree, degree, |r, c| {
                if r + 1 == degree {
                    -self.coeffs[c] / lead
                } else if c == r + 1 {
                    C64::one()
                } else {
                    C64::zero()
                }
            });
            linalg::eigenvalues(&companion)?
        };
        let dp = self.derivative();
        for r in roots.iter_mut() {
            let value = self.eval(*r);
            let slope = dp.eval(*r);
            if slope == C64::zero() || value == C64::zero() {
                continue;
            }
            let candidate = *r - value / slope;
            if candidate.is_finite() && self.eval(candidate).norm() < value.norm() {
                *r = candidate;
            }
        }
        let quantum = ordering_quantum(&roots);
        roots.sort_by(|a, b| quantized_cmp(*a, *b, quantum));
        Ok(roots)
    }

    /// Roots grouped into distinct clusters. Starts from distance-based
    /// single-linkage clustering, then merges clusters whose spread is
    /// consistent with a multiple root perturbed by coefficient noise.
    pub fn distinct_roots(&self, opts: &ClusterOptions) -> Result<DistinctRoots> {
        let roots = self.roots()?;
        Ok(self.cluster_with(&roots, opts))
    }

    pub(crate) fn cluster_with(&self, roots: &[C64], opts: &ClusterOptions) -> DistinctRoots {
        let tol_abs = opts.tol_abs.unwrap_or(1e-8 * self.scale());
        let mut groups = single_linkage(roots, tol_abs, opts.tol_rel);

        let mut ambiguous = 0usize;
        if opts.noise > 0.0 {
            loop {
                let mut best: Option<(f64, usize, usize)> = None;
                for a in 0..groups.len() {
                    for b in a + 1..groups.len() {
                        let merged: Vec<C64> = groups[a].iter().chain(&groups[b]).copied().collect();
                        let (spread, threshold) = self.multiple_root_test(&merged, opts);
                        if spread <= threshold {
                            let dist = (mean(&groups[a]) - mean(&groups[b])).norm();
                            if best.is_none_or(|(d, _, _)| dist < d) {
                                best = Some((dist, a, b));
                            }
                        }
                    }
                }
                match best {
                    Some((_, a, b)) => {
                        let taken = groups.remove(b);
                        groups[a].extend(taken);
                    }
                    None => break,
                }
            }
            for a in 0..groups.len() {
                for b in a + 1..groups.len() {
                    let merged: Vec<C64> = groups[a].iter().chain(&groups[b]).copied().collect();
                    let (spread, threshold) = self.multiple_root_test(&merged, opts);
                    if spread <= NEAR_TOLERANCE_FACTOR * threshold {
                        ambiguous += 1;
                    }
                }
            }
        }

        let mut clusters: Vec<RootCluster> = groups
            .iter()
            .map(|members| {
                let mut c = RootCluster::from_members(members);
                c.member_residual = members.iter().map(|r| self.eval(*r).norm()).fold(0.0, f64::max);
                c
            })
            .collect();
        sort_clusters(&mut clusters);
        let near_tolerance = (ambiguous > 0).then(|| NearTolerance {
            merged: clusters.len().saturating_sub(ambiguous).max(1),
            split: clusters.len(),
        });
        DistinctRoots {
            clusters,
            near_tolerance,
        }
    }

    /// Returns `(spread, threshold)` for treating `members` as one root of
    /// multiplicity `members.len()`. The threshold is the radius over which
    /// a root of that multiplicity scatters under relative coefficient
    /// perturbations of size `opts.noise`.
    fn multiple_root_test(&self, members: &[C64], opts: &ClusterOptions) -> (f64, f64) {
        let k = members.len();
        let m = mean(members);
        let spread = members.iter().map(|r| (r - m).norm()).fold(0.0, f64::max);
        let lead = self.leading().unwrap_or(C64::one()).norm();
        let taylor = self.taylor_coeffs(m);
        let ck = taylor.get(k).map_or(0.0, |c| c.norm()) / lead;
        if ck == 0.0 {
            return (spread, f64::INFINITY);
        }
        let mag = m.norm();
        let eval_scale: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() / lead * mag.powi(j as i32))
            .sum();
        let threshold = MULTIPLE_ROOT_SLACK * (opts.noise * eval_scale / ck).powf(1.0 / k as f64);
        (spread, threshold)
    }
}

const MULTIPLE_ROOT_SLACK: f64 = 2.0;
const NEAR_TOLERANCE_FACTOR: f64 = 10.0;

/// Tolerances for grouping numerically coincident roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterOptions {
    /// Absolute distance threshold; `None` means `1e-8 * scale(p)`.
    pub tol_abs: Option<f64>,
    pub tol_rel: f64,
    /// Assumed relative noise in the coefficients. Zero disables the
    /// multiplicity-aware merge and leaves plain distance clustering.
    pub noise: f64,
}

impl Default for ClusterOptions {
    fn default() -> Self {
        ClusterOptions {
            tol_abs: None,
            tol_rel: 1e-8,
            noise: 1e-13,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    /// Mean of the members.
    pub representative: C64,
    pub multiplicity: usize,
    /// `max |p(r)|` over members; zero when no polynomial was supplied.
    pub member_residual: f64,
    /// Largest distance from a member to the representative.
    pub radius: f64,
}

impl RootCluster {
    fn from_members(members: &[C64]) -> Self {
        let representative = mean(members);
        RootCluster {
            representative,
            multiplicity: members.len(),
            member_residual: 0.0,
            radius: members
                .iter()
                .map(|r| (r - representative).norm())
                .fold(0.0, f64::max),
        }
    }
}

/// Counts reported when a merge decision sits close to the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearTolerance {
    pub merged: usize,
    pub split: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistinctRoots {
    pub clusters: Vec<RootCluster>,
    pub near_tolerance: Option<NearTolerance>,
}

/// Single-linkage clustering: `r1` and `r2` are linked when
/// `|r1 - r2| <= tol_abs + tol_rel * max(|r1|, |r2|)`.
pub fn cluster_roots(roots: &[C64], tol_abs: f64, tol_rel: f64) -> Vec<RootCluster> {
    let mut clusters: Vec<RootCluster> = single_linkage(roots, tol_abs, tol_rel)
        .iter()
        .map(|m| RootCluster::from_members(m))
        .collect();
    sort_clusters(&mut clusters);
    clusters
}

fn single_linkage(roots: &[C64], tol_abs: f64, tol_rel: f64) -> Vec<Vec<C64>> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let limit = tol_abs + tol_rel * roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() <= limit {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<C64>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(roots[i]);
    }
    // Canonical member order keeps representatives independent of input order.
    for g in groups.iter_mut() {
        g.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    }
    groups
}

fn mean(values: &[C64]) -> C64 {
    let mut sorted: Vec<C64> = values.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    sorted.iter().sum::<C64>() / sorted.len() as f64
}

fn sort_clusters(clusters: &mut [RootCluster]) {
    let reps: Vec<C64> = clusters.iter().map(|c| c.representative).collect();
    let quantum = ordering_quantum(&reps);
    clusters.sort_by(|a, b| quantized_cmp(a.representative, b.representative, quantum));
}
