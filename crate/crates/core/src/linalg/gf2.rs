use std::collections::HashMap;

use super::{IntMatrix, IntVector, LinalgError};

/// Sparse GF(2) matrix as columns of sorted row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Columns {
    rows: usize,
    cols: Vec<Vec<usize>>,
}

/// Symmetric difference of two sorted index lists.
fn xor_into(acc: &mut Vec<usize>, other: &[usize]) {
    let mut out = Vec::with_capacity(acc.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() && j < other.len() {
        match acc[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(acc[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&acc[i..]);
    out.extend_from_slice(&other[j..]);
    *acc = out;
}

struct Reduced {
    /// lowest row index -> (reduced column, original columns combined)
    pivots: HashMap<usize, (Vec<usize>, Vec<usize>)>,
}

impl Gf2Columns {
    /// Columns are sorted and deduplicated mod 2 (pairs cancel).
    pub fn new(rows: usize, cols: Vec<Vec<usize>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<usize> = Vec::with_capacity(c.len());
                for r in c {
                    assert!(r < rows, "row {r} out of range");
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Gf2Columns { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    /// Standard column reduction keyed on the lowest nonzero row.
    fn reduce(&self, track: bool) -> Reduced {
        let mut pivots: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
        for (j, col) in self.cols.iter().enumerate() {
            let mut c = col.clone();
            let mut combo = if track { vec![j] } else { Vec::new() };
            while let Some(&low) = c.last() {
                match pivots.get(&low) {
                    Some((pc, pcombo)) => {
                        xor_into(&mut c, pc);
                        if track {
                            xor_into(&mut combo, pcombo);
                        }
                    }
                    None => break,
                }
            }
            if let Some(&low) = c.last() {
                pivots.insert(low, (c, combo));
            }
        }
        Reduced { pivots }
    }

    pub fn rank(&self) -> usize {
        self.reduce(false).pivots.len()
    }

    /// A 0/1 vector `x` with `A·x = b` over GF(2), if one exists.
    pub fn solve(&self, b: &[usize]) -> Option<Vec<u8>> {
        let red = self.reduce(true);
        let mut rhs: Vec<usize> = b.to_vec();
        rhs.sort_unstable();
        let mut combo: Vec<usize> = Vec::new();
        while let Some(&low) = rhs.last() {
            let (pc, pcombo) = red.pivots.get(&low)?;
            xor_into(&mut rhs, pc);
            xor_into(&mut combo, pcombo);
        }
        let mut x = vec![0u8; self.cols()];
        for j in combo {
            x[j] = 1;
        }
        Some(x)
    }

    /// `A·x` over GF(2), as the sorted support.
    pub fn mul_vec(&self, x: &[u8]) -> Vec<usize> {
        let mut acc = Vec::new();
        for (j, &xj) in x.iter().enumerate() {
            if xj & 1 == 1 {
                xor_into(&mut acc, &self.cols[j]);
            }
        }
        acc
    }
}

/// Rank over GF(2) after reducing entries mod 2.
pub fn rank_mod2(a: &IntMatrix) -> usize {
    a.to_gf2().rank()
}

/// A 0/1 witness for `A·x ≡ b (mod 2)`, or `None`.
pub fn solve_mod2(a: &IntMatrix, b: &IntVector) -> Result<Option<Vec<u8>>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} rows, right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let support: Vec<usize> = b
        .mod2()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == 1)
        .map(|(i, _)| i)
        .collect();
    Ok(a.to_gf2().solve(&support))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank_mod2(&IntMatrix::identity(5)), 5);
        assert_eq!(rank_mod2(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank_mod2(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])), 0);
        assert_eq!(rank_mod2(&IntMatrix::zeros(3, 2)), 0);
    }

    #[test]
    fn solve_with_witness() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let b = IntVector::from_i64(&[1, 1, 0]);
        let x = solve_mod2(&a, &b).unwrap().unwrap();
        let g = a.to_gf2();
        assert_eq!(g.mul_vec(&x), vec![0, 1]);
        // odd total parity is outside the column space (every column has weight 2)
        assert_eq!(solve_mod2(&a, &IntVector::from_i64(&[1, 0, 0])).unwrap(), None);
    }

    #[test]
    fn duplicate_entries_cancel() {
        let g = Gf2Columns::new(3, vec![vec![0, 0, 2]]);
        assert_eq!(g.column(0), &[2]);
    }
}
