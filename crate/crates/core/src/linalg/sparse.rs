//! Integer solvability for large sparse systems.
//!
//! Variables are eliminated through unit (±1) pivots, which are unimodular
//! and keep the problem over the integers. Row singletons fix their variable
//! outright. Whatever survives without a unit pivot is handed to the dense
//! Smith normal form route. Witnesses are rebuilt by back-substitution and
//! checked against the original system.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{has_integer_solution, IntMatrix, IntVector, LinalgError};

/// Column-major sparse integer matrix. Each column is sorted by row index and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize) -> Self {
        SparseIntMatrix {
            rows,
            columns: Vec::new(),
        }
    }

    /// Appends a column; entries may arrive in any order, zeros are dropped,
    /// repeated rows are summed.
    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut acc: Vec<(usize, BigInt)> = Vec::new();
        let mut sorted: Vec<(usize, BigInt)> = entries.into_iter().collect();
        sorted.sort_by_key(|e| e.0);
        for (r, v) in sorted {
            assert!(r < self.rows, "row {r} out of range");
            match acc.last_mut() {
                Some((lr, lv)) if *lr == r => *lv += v,
                _ => acc.push((r, v)),
            }
        }
        acc.retain(|(_, v)| !v.is_zero());
        self.columns.push(acc);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigInt)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .binary_search_by_key(&i, |e| e.0)
            .map_or_else(|_| BigInt::zero(), |p| self.columns[j][p].1.clone())
    }

    pub fn from_dense(a: &IntMatrix) -> Self {
        let mut m = SparseIntMatrix::new(a.rows());
        for j in 0..a.cols() {
            m.push_column((0..a.rows()).map(|i| (i, a[(i, j)].clone())));
        }
        m
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                a[(*i, j)] = v.clone();
            }
        }
        a
    }

    pub fn mul_vec(&self, x: &IntVector) -> Result<IntVector, LinalgError> {
        if x.len() != self.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} columns, vector of length {}",
                self.cols(),
                x.len()
            )));
        }
        let mut out = IntVector::zeros(self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, v) in col {
                out[*i] += v * &x[j];
            }
        }
        Ok(out)
    }

    /// Entrywise reduction modulo 2.
    pub fn to_gf2(&self) -> super::Gf2Columns {
        super::Gf2Columns::new(
            self.rows,
            self.columns
                .iter()
                .map(|c| c.iter().filter(|(_, v)| v.bit(0)).map(|(i, _)| *i).collect())
                .collect(),
        )
    }
}

enum Step {
    /// `x_col = sign * (rhs - Σ row[c] x_c)` over the snapshot row.
    Pivot {
        col: usize,
        sign: BigInt,
        rhs: BigInt,
        row: Vec<(usize, BigInt)>,
    },
    Fixed {
        col: usize,
        value: BigInt,
    },
}

struct Work {
    rows: Vec<HashMap<usize, BigInt>>,
    col_rows: Vec<HashSet<usize>>,
    rhs: Vec<BigInt>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    singletons: Vec<usize>,
}

impl Work {
    fn touch_col(&mut self, c: usize) {
        if self.col_alive[c] {
            self.heap.push(Reverse((self.col_rows[c].len(), c)));
        }
    }

    fn touch_row(&mut self, r: usize) -> Result<(), ()> {
        match self.rows[r].len() {
            0 => {
                self.row_alive[r] = false;
                if self.rhs[r].is_zero() {
                    Ok(())
                } else {
                    Err(())
                }
            }
            1 => {
                self.singletons.push(r);
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Removes column `c` after its value is known, folding `value * column`
    /// into the right-hand side.
    fn substitute(&mut self, c: usize, value: &BigInt) -> Result<(), ()> {
        self.col_alive[c] = false;
        let mut rows: Vec<usize> = self.col_rows[c].drain().collect();
        rows.sort_unstable();
        for r in rows {
            let a = self.rows[r].remove(&c).expect("consistent incidence");
            self.rhs[r] -= a * value;
            self.touch_row(r)?;
        }
        Ok(())
    }
}

/// Integer solvability of a sparse system `A·x = b`, with a witness.
pub fn has_integer_solution_sparse(
    a: &SparseIntMatrix,
    b: &IntVector,
) -> Result<Option<IntVector>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} rows, right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut w = Work {
        rows: vec![HashMap::new(); a.rows()],
        col_rows: vec![HashSet::new(); n],
        rhs: b.0.clone(),
        row_alive: vec![true; a.rows()],
        col_alive: vec![true; n],
        heap: BinaryHeap::new(),
        singletons: Vec::new(),
    };
    for (j, col) in a.columns.iter().enumerate() {
        for (i, v) in col {
            w.rows[*i].insert(j, v.clone());
            w.col_rows[j].insert(*i);
        }
    }
    for r in 0..a.rows() {
        if w.touch_row(r).is_err() {
            return Ok(None);
        }
    }
    for c in 0..n {
        w.touch_col(c);
    }

    let mut steps: Vec<Step> = Vec::new();
    loop {
        // row singletons first: no fill, and they pin a variable
        while let Some(r) = w.singletons.pop() {
            if !w.row_alive[r] || w.rows[r].len() != 1 {
                continue;
            }
            let (&c, coef) = w.rows[r].iter().next().expect("singleton");
            let (value, rem) = w.rhs[r].div_rem(coef);
            if !rem.is_zero() {
                return Ok(None);
            }
            steps.push(Step::Fixed {
                col: c,
                value: value.clone(),
            });
            if w.substitute(c, &value).is_err() {
                return Ok(None);
            }
        }

        let Some(Reverse((count, c))) = w.heap.pop() else {
            break;
        };
        if !w.col_alive[c] || w.col_rows[c].len() != count {
            continue;
        }
        if count == 0 {
            // free variable
            w.col_alive[c] = false;
            continue;
        }
        // unit entry in the sparsest row
        let pivot_row = w.col_rows[c]
            .iter()
            .copied()
            .filter(|&r| w.rows[r][&c].abs().is_one())
            .min_by_key(|&r| (w.rows[r].len(), r));
        let Some(pr) = pivot_row else {
            continue;
        };
        let sign = w.rows[pr][&c].clone();
        let pivot: Vec<(usize, BigInt)> = {
            let mut v: Vec<(usize, BigInt)> =
                w.rows[pr].iter().map(|(&k, x)| (k, x.clone())).collect();
            v.sort_by_key(|e| e.0);
            v
        };
        let prhs = w.rhs[pr].clone();

        let mut others: Vec<usize> = w.col_rows[c].iter().copied().filter(|&r| r != pr).collect();
        others.sort_unstable();
        let mut touched_cols: HashSet<usize> = HashSet::new();
        for r in others {
            let f = &w.rows[r][&c] * &sign;
            for (k, x) in &pivot {
                let delta = x * &f;
                let entry = w.rows[r].entry(*k).or_insert_with(BigInt::zero);
                *entry -= delta;
                if entry.is_zero() {
                    w.rows[r].remove(k);
                    w.col_rows[*k].remove(&r);
                } else {
                    w.col_rows[*k].insert(r);
                }
                touched_cols.insert(*k);
            }
            let d = &prhs * &f;
            w.rhs[r] -= d;
            if w.touch_row(r).is_err() {
                return Ok(None);
            }
        }
        // drop the pivot row and column
        w.row_alive[pr] = false;
        for (k, _) in &pivot {
            w.col_rows[*k].remove(&pr);
            touched_cols.insert(*k);
        }
        w.rows[pr].clear();
        w.col_alive[c] = false;
        let mut tc: Vec<usize> = touched_cols.into_iter().collect();
        tc.sort_unstable();
        for k in tc {
            w.touch_col(k);
        }
        steps.push(Step::Pivot {
            col: c,
            sign,
            rhs: prhs,
            row: pivot,
        });
    }

    // dense remainder
    let live_rows: Vec<usize> = (0..a.rows()).filter(|&r| w.row_alive[r]).collect();
    let live_cols: Vec<usize> = (0..n)
        .filter(|&c| w.col_alive[c] && !w.col_rows[c].is_empty())
        .collect();
    let mut x = IntVector::zeros(n);
    if !live_rows.is_empty() {
        let col_pos: HashMap<usize, usize> =
            live_cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
        let mut rhs = IntVector::zeros(live_rows.len());
        for (p, &r) in live_rows.iter().enumerate() {
            for (c, v) in &w.rows[r] {
                dense[(p, col_pos[c])] = v.clone();
            }
            rhs[p] = w.rhs[r].clone();
        }
        match has_integer_solution(&dense, &rhs)? {
            None => return Ok(None),
            Some(y) => {
                for (p, &c) in live_cols.iter().enumerate() {
                    x[c] = y[p].clone();
                }
            }
        }
    }

    for step in steps.into_iter().rev() {
        match step {
            Step::Fixed { col, value } => x[col] = value,
            Step::Pivot {
                col,
                sign,
                rhs,
                row,
            } => {
                let mut acc = rhs;
                for (k, v) in &row {
                    if *k != col {
                        acc -= v * &x[*k];
                    }
                }
                x[col] = acc * sign;
            }
        }
    }

    if a.mul_vec(&x)? != *b {
        return Err(LinalgError::Internal(
            "sparse integer witness fails A*x = b".into(),
        ));
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sparse(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(&IntMatrix::from_rows(rows))
    }

    #[test]
    fn unit_chain() {
        let a = sparse(&[vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]]);
        let b = IntVector::from_i64(&[1, 2, 3]);
        let x = has_integer_solution_sparse(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn parity_obstruction_survives_elimination() {
        // x + y = 1, x - y = 0 has only the rational solution (1/2, 1/2)
        let a = sparse(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(
            has_integer_solution_sparse(&a, &IntVector::from_i64(&[1, 0])).unwrap(),
            None
        );
        assert!(has_integer_solution_sparse(&a, &IntVector::from_i64(&[2, 0]))
            .unwrap()
            .is_some());
    }

    #[test]
    fn non_unit_remainder_goes_dense() {
        let a = sparse(&[vec![2, 4], vec![6, 8]]);
        assert!(has_integer_solution_sparse(&a, &IntVector::from_i64(&[2, 2]))
            .unwrap()
            .is_some());
        assert_eq!(
            has_integer_solution_sparse(&a, &IntVector::from_i64(&[1, 0])).unwrap(),
            None
        );
    }

    #[test]
    fn zero_rows_and_singletons() {
        let a = sparse(&[vec![0, 0], vec![3, 0]]);
        assert_eq!(
            has_integer_solution_sparse(&a, &IntVector::from_i64(&[1, 3])).unwrap(),
            None
        );
        assert_eq!(
            has_integer_solution_sparse(&a, &IntVector::from_i64(&[0, 4])).unwrap(),
            None
        );
        let x = has_integer_solution_sparse(&a, &IntVector::from_i64(&[0, 6]))
            .unwrap()
            .unwrap();
        assert_eq!(x[0], BigInt::from(2));
    }

    #[test]
    fn push_column_merges_duplicates() {
        let mut m = SparseIntMatrix::new(3);
        m.push_column([(2, BigInt::from(1)), (0, BigInt::from(2)), (2, BigInt::from(-1))]);
        assert_eq!(m.column(0), &[(0, BigInt::from(2))]);
        assert_eq!(m.get(0, 0), BigInt::from(2));
        assert_eq!(m.get(2, 0), BigInt::zero());
    }
}
