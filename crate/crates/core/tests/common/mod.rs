//! Helpers shared by the integration tests. Everything here is deliberately
//! naive and independent of the library's own numerical paths.

#![allow(dead_code)]

use std::f64::consts::PI;

use qcomm_core::{CMatrix, C64};
use rand::Rng;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    c(x, 0.0)
}

pub fn reals(xs: &[f64]) -> Vec<C64> {
    xs.iter().map(|&x| re(x)).collect()
}

/// `exp(2 pi i / 3)`.
pub fn omega3() -> C64 {
    C64::from_polar(1.0, 2.0 * PI / 3.0)
}

pub fn rand_c<R: Rng>(rng: &mut R, half_width: f64) -> C64 {
    c(rng.gen_range(-half_width..=half_width), rng.gen_range(-half_width..=half_width))
}

/// `count` points in the square `[-w, w]^2` with pairwise distance at least `min_gap`.
pub fn spread_points<R: Rng>(rng: &mut R, count: usize, half_width: f64, min_gap: f64) -> Vec<C64> {
    loop {
        let pts: Vec<C64> = (0..count).map(|_| rand_c(rng, half_width)).collect();
        let ok = (0..count).all(|i| (i + 1..count).all(|j| (pts[i] - pts[j]).norm() >= min_gap));
        if ok {
            return pts;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, d: usize, half_width: f64) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| rand_c(rng, half_width))
}

pub fn naive_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows(), b.cols(), |i, j| (0..a.cols()).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

pub fn frob(a: &CMatrix) -> f64 {
    a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Gauss-Jordan inverse with partial pivoting.
pub fn naive_inverse(a: &CMatrix) -> CMatrix {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n)
        .map(|i| {
            let mut row: Vec<C64> = a.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { re(1.0) } else { re(0.0) }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm())).unwrap();
        m.swap(col, p);
        let pivot = m[col][col];
        for v in m[col].iter_mut() {
            *v /= pivot;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                for k in 0..2 * n {
                    let t = m[col][k];
                    m[r][k] -= f * t;
                }
            }
        }
    }
    CMatrix::from_fn(n, n, |r, c| m[r][n + c])
}

pub fn naive_solve(a: &CMatrix, b: &[C64]) -> Vec<C64> {
    let inv = naive_inverse(a);
    (0..a.rows()).map(|r| (0..a.cols()).map(|k| inv[(r, k)] * b[k]).sum()).collect()
}

/// `sum_j coeffs[j] Q^j` with explicit powers.
pub fn naive_poly_of_matrix(q: &CMatrix, coeffs: &[C64]) -> CMatrix {
    let d = q.rows();
    let mut out = CMatrix::zeros(d, d);
    let mut power = CMatrix::identity(d);
    for &a in coeffs {
        out = &out + &power.scale(a);
        power = naive_mul(&power, q);
    }
    out
}

/// Coefficients of the polynomial of degree below `nodes.len()` that takes
/// `values` at `nodes`, by Gauss-Jordan on the Vandermonde matrix.
pub fn naive_interpolate(nodes: &[C64], values: &[C64]) -> Vec<C64> {
    let n = nodes.len();
    let v = CMatrix::from_fn(n, n, |i, j| nodes[i].powu(j as u32));
    naive_solve(&v, values)
}

/// Expands `prod (x - r)`; ascending coefficients.
pub fn expand_roots(roots: &[C64]) -> Vec<C64> {
    let mut out = vec![re(1.0)];
    for &r in roots {
        let mut next = vec![re(0.0); out.len() + 1];
        for (j, &a) in out.iter().enumerate() {
            next[j + 1] += a;
            next[j] -= r * a;
        }
        out = next;
    }
    out
}

/// `Q = S diag(eigs) S^-1` with a random well-scaled `S`.
pub struct Planted {
    pub q: CMatrix,
    pub s: CMatrix,
    pub s_inv: CMatrix,
    pub eigs: Vec<C64>,
}

impl Planted {
    pub fn new<R: Rng>(rng: &mut R, eigs: Vec<C64>) -> Planted {
        let d = eigs.len();
        let mut s = random_matrix(rng, d, 1.0);
        for i in 0..d {
            s[(i, i)] += re(2.0);
        }
        let s_inv = naive_inverse(&s);
        let q = naive_mul(&naive_mul(&s, &CMatrix::from_diag(&eigs)), &s_inv);
        Planted { q, s, s_inv, eigs }
    }

    /// Random planted spectrum with pairwise gaps of at least `min_gap`.
    pub fn random<R: Rng>(rng: &mut R, d: usize, half_width: f64, min_gap: f64) -> Planted {
        let eigs = spread_points(rng, d, half_width, min_gap);
        Planted::new(rng, eigs)
    }

    pub fn member(&self, u: &[C64]) -> CMatrix {
        naive_mul(&naive_mul(&self.s, &CMatrix::from_diag(u)), &self.s_inv)
    }
}

/// Greedy bijective matching of two matrix sets. Returns the largest
/// `||x - y||_F / (1 + ||y||_F)` over matched pairs, or `None` when the sets
/// differ in size.
pub fn match_sets(a: &[CMatrix], b: &[CMatrix]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, err) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, diff(x, y) / (1.0 + frob(y))))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        used[j] = true;
        worst = worst.max(err);
    }
    Some(worst)
}

/// `Q` of the weighted-circulant worked example.
pub fn example_weighted_q() -> CMatrix {
    CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [8.0, 0.0, 0.0]]).unwrap()
}

/// Eigenvalue order used by the weighted-circulant example: `2, 2w^2, 2w`.
pub fn example_weighted_eigs() -> Vec<C64> {
    let w = omega3();
    vec![re(2.0), w * w * 2.0, w * 2.0]
}

/// Coefficient matrices `A`, `B` with `f_A = (-5, 2, -3)` and `f_B = (4, 1, 2)`
/// at the given eigenvalues of `q`.
pub fn example_coefficients(q: &CMatrix, eigs: &[C64]) -> (CMatrix, CMatrix) {
    let a = naive_interpolate(eigs, &reals(&[-5.0, 2.0, -3.0]));
    let b = naive_interpolate(eigs, &reals(&[4.0, 1.0, 2.0]));
    (naive_poly_of_matrix(q, &a), naive_poly_of_matrix(q, &b))
}

/// The four printed solutions of the weighted-circulant example.
pub fn example_weighted_solutions() -> Vec<CMatrix> {
    let w = omega3();
    let w2 = w * w;
    let m = |rows: [[C64; 3]; 3], s: f64| CMatrix::from_rows(&rows).unwrap().scale(re(1.0 / s));
    vec![
        m(
            [[re(2.0), -w * 2.0, -w2], [-w2 * 8.0, re(2.0), -w * 2.0], [-w * 16.0, -w2 * 8.0, re(2.0)]],
            6.0,
        ),
        m(
            [
                [re(8.0), w2 * 6.0 + 4.0, -w2 * 3.0 - 1.0],
                [-w2 * 24.0 - 8.0, re(8.0), w2 * 6.0 + 4.0],
                [w2 * 48.0 + 32.0, -w2 * 24.0 - 8.0, re(8.0)],
            ],
            12.0,
        ),
        m(
            [
                [re(16.0), w2 * 4.0 + 10.0, -w2 * 2.0 + 3.0],
                [-w2 * 16.0 + 24.0, re(16.0), w2 * 4.0 + 10.0],
                [w2 * 32.0 + 80.0, -w2 * 16.0 + 24.0, re(16.0)],
            ],
            12.0,
        ),
        m(
            [
                [re(20.0), w2 * 6.0 + 10.0, -w2 * 3.0 + 2.0],
                [-w2 * 24.0 + 16.0, re(20.0), w2 * 6.0 + 10.0],
                [w2 * 48.0 + 80.0, -w2 * 24.0 + 16.0, re(20.0)],
            ],
            12.0,
        ),
    ]
}

pub fn example_companion_q() -> CMatrix {
    CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [6.0, -11.0, 6.0]]).unwrap()
}

/// The four printed solutions of the companion example.
pub fn example_companion_solutions() -> Vec<CMatrix> {
    let m = |rows: [[f64; 3]; 3], s: f64| CMatrix::from_real_rows(&rows).unwrap().scale(re(1.0 / s));
    vec![
        m([[7.0, -8.0, 2.0], [12.0, -15.0, 4.0], [24.0, -32.0, 9.0]], 1.0),
        m([[16.0, -19.0, 5.0], [30.0, -39.0, 11.0], [66.0, -91.0, 27.0]], 2.0),
        m([[32.0, -31.0, 7.0], [42.0, -45.0, 11.0], [66.0, -79.0, 21.0]], 2.0),
        m([[17.0, -17.0, 4.0], [24.0, -27.0, 7.0], [42.0, -53.0, 15.0]], 1.0),
    ]
}
