//! Exact k-nearest-neighbor search.

use rayon::prelude::*;

use crate::dataset::PointCloud;
use crate::error::{LleError, Result};

/// Row `i` lists the `k` nearest neighbors of point `i`, closest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborGraph {
    indices: Vec<usize>,
    k: usize,
}

impl NeighborGraph {
    /// Wraps precomputed neighbor lists, checking the structural invariants.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        if k == 0 {
            return Err(LleError::InvalidInput("neighbor lists must be non-empty".into()));
        }
        let mut indices = Vec::with_capacity(n * k);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(LleError::InvalidInput(format!("row {i} has {} neighbors, expected {k}", row.len())));
            }
            for (a, &j) in row.iter().enumerate() {
                if j >= n || j == i || row[..a].contains(&j) {
                    return Err(LleError::InvalidInput(format!("row {i} has invalid neighbor {j}")));
                }
            }
            indices.extend(row);
        }
        Ok(Self { indices, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len() / self.k
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.indices[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.indices.chunks(self.k)
    }
}

/// Brute-force search over all pairs. Ties in distance go to the smaller
/// index.
pub fn knn(cloud: &PointCloud, k: usize) -> Result<NeighborGraph> {
    let n = cloud.len();
    if k == 0 || k >= n {
        return Err(LleError::InvalidInput(format!("k must satisfy 1 <= k <= N-1 (k={k}, N={n})")));
    }
    let x = cloud.points();
    let dim = x.nrows();
    let flat = x.as_slice();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = &flat[i * dim..(i + 1) * dim];
            let mut cand: Vec<(f64, usize)> = flat
                .chunks_exact(dim)
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, xj)| (xj.iter().zip(xi).map(|(a, b)| (a - b) * (a - b)).sum(), j))
                .collect();
            let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
            if k < cand.len() {
                cand.select_nth_unstable_by(k - 1, cmp);
                cand.truncate(k);
            }
            cand.sort_unstable_by(cmp);
            cand.into_iter().map(|(_, j)| j).collect()
        })
        .collect();
    let indices = rows.into_iter().flatten().collect();
    Ok(NeighborGraph { indices, k })
}
