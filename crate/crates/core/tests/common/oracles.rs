//! Independent reference computations for tests. Nothing here calls into
//! the solver paths it is used to check.

#![allow(dead_code)]

use lle_core::nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

/// Full sort of all squared distances, ties by index.
pub fn brute_force_knn(points: &DMatrix<f64>, k: usize) -> Vec<Vec<usize>> {
    let n = points.ncols();
    let dim = points.nrows();
    (0..n)
        .map(|i| {
            let mut all: Vec<(f64, usize)> = Vec::with_capacity(n);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut d2 = 0.0;
                for r in 0..dim {
                    let diff = points[(r, j)] - points[(r, i)];
                    d2 += diff * diff;
                }
                all.push((d2, j));
            }
            all.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
            all.into_iter().take(k).map(|(_, j)| j).collect()
        })
        .collect()
}

/// `(I - W)ᵀ(I - W)` by explicit dense products.
pub fn dense_alignment(neighbors: &[Vec<usize>], weights: &DMatrix<f64>) -> DMatrix<f64> {
    let n = neighbors.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = 1.0;
        for (j, &s) in neighbors[i].iter().enumerate() {
            a[i][s] -= weights[(i, j)];
        }
    }
    let mut m = DMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let mut acc = 0.0;
            for (i, row) in a.iter().enumerate() {
                let _ = i;
                acc += row[r] * row[c];
            }
            m[(r, c)] = acc;
        }
    }
    m
}

/// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Returns
/// ascending eigenvalues and eigenvectors as columns.
pub fn jacobi_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| m[(r, c)]).collect()).collect();
    let mut v: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q))).map(|(p, q)| a[p][q] * a[p][q]).sum();
        let total: f64 = a.iter().flatten().map(|x| x * x).sum();
        if off <= 1e-30 * total.max(1e-300) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let (arp, arq) = (a[r][p], a[r][q]);
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[p][r], a[q][r]);
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                for r in 0..n {
                    let (vrp, vrq) = (v[r][p], v[r][q]);
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].partial_cmp(&a[y][y]).unwrap());
    let values = order.iter().map(|&j| a[j][j]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| v[r][order[c]]);
    (values, vectors)
}

/// Random symmetric positive semidefinite `n x n` matrix `B Bᵀ` with `B`
/// of shape `n x rank`.
pub fn random_psd(n: usize, rank: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let b = uniform_matrix(n, rank, rng);
    &b * b.transpose()
}

fn center_normalize(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut c = m.clone();
    for r in 0..c.nrows() {
        let mean: f64 = c.row(r).iter().sum::<f64>() / c.ncols() as f64;
        for x in c.row_mut(r).iter_mut() {
            *x -= mean;
        }
    }
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    c / norm
}

/// Procrustes distance for `d = 2` by searching rotation angle, with and
/// without a reflection, on a grid followed by golden-section refinement.
pub fn procrustes_brute_2d(y: &DMatrix<f64>, z: &DMatrix<f64>) -> f64 {
    assert_eq!(y.nrows(), 2);
    let a = center_normalize(y);
    let b = center_normalize(z);
    let cost = |theta: f64, flip: f64| {
        let (c, s) = (theta.cos(), theta.sin());
        let mut acc = 0.0;
        for i in 0..a.ncols() {
            let (u, v) = (a[(0, i)], flip * a[(1, i)]);
            let (p, q) = (c * u - s * v, s * u + c * v);
            acc += (p - b[(0, i)]).powi(2) + (q - b[(1, i)]).powi(2);
        }
        acc
    };
    let mut best = f64::INFINITY;
    for flip in [1.0, -1.0] {
        let steps = 3600;
        let h = std::f64::consts::TAU / steps as f64;
        let (mut t_best, mut c_best) = (0.0, f64::INFINITY);
        for j in 0..steps {
            let t = j as f64 * h;
            let c = cost(t, flip);
            if c < c_best {
                c_best = c;
                t_best = t;
            }
        }
        let (mut lo, mut hi) = (t_best - h, t_best + h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if cost(m1, flip) < cost(m2, flip) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(cost(0.5 * (lo + hi), flip));
    }
    best.max(0.0).sqrt()
}

/// Squared singular values of `x`, descending, via the SVD.
pub fn squared_singular_values(x: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = x.clone().svd(false, false).singular_values.iter().map(|v| v * v).collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// `‖(I - W)Yᵀ‖_F²` from explicit loops.
pub fn dense_cost(neighbors: &[Vec<usize>], weights: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let mut total = 0.0;
    for (i, nb) in neighbors.iter().enumerate() {
        for r in 0..y.nrows() {
            let mut v = y[(r, i)];
            for (j, &s) in nb.iter().enumerate() {
                v -= weights[(i, j)] * y[(r, s)];
            }
            total += v * v;
        }
    }
    total
}
