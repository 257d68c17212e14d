//! Simplicial homology with Z/2 coefficients.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::linalg::Gf2Columns;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
}

/// Z/2 boundary map from i-chains to (i-1)-chains. Columns follow the
/// lexicographic order of the i-simplices, rows that of the (i-1)-simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub matrix: Gf2Columns,
}

pub fn boundary_matrix(k: &SimplicialComplex, i: usize) -> Result<BoundaryMatrix, HomologyError> {
    if i == 0 || i > k.dim() {
        return Err(HomologyError::IndexOutOfRange {
            index: i,
            dim: k.dim(),
        });
    }
    let index: HashMap<&Simplex, usize> = k
        .simplices(i - 1)
        .iter()
        .enumerate()
        .map(|(p, s)| (s, p))
        .collect();
    let cols = k
        .simplices(i)
        .iter()
        .map(|s| s.facets().map(|f| index[&f]).collect())
        .collect();
    Ok(BoundaryMatrix {
        dim: i,
        matrix: Gf2Columns::new(k.count(i - 1), cols),
    })
}

/// Z/2 Betti numbers `b_0, ..., b_dim`.
pub fn betti_mod2(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_empty() {
        return Vec::new();
    }
    let d = k.dim();
    // rank[i] = rank of ∂_i, with ∂_0 = ∂_{d+1} = 0
    let mut rank = vec![0usize; d + 2];
    for (i, r) in rank.iter_mut().enumerate().take(d + 1).skip(1) {
        *r = boundary_matrix(k, i).expect("in range").matrix.rank();
    }
    (0..=d).map(|i| k.count(i) - rank[i] - rank[i + 1]).collect()
}
