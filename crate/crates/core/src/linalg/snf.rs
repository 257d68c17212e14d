use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, IntVector, LinalgError};

/// `S = U·A·V` with `U`, `V` unimodular and `S` diagonal with a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form with smallest-nonzero pivoting.
///
/// The identity `S = U·A·V`, unimodularity of `U` and `V`, diagonality and the
/// divisibility chain are all checked before returning.
pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfDecomposition, LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&s, t, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&s[(i, t)], &s[(t, t)]);
                let f = -q;
                s.add_row_multiple(i, t, &f);
                u.add_row_multiple(i, t, &f);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&s[(t, j)], &s[(t, t)]);
                let f = -q;
                s.add_col_multiple(j, t, &f);
                v.add_col_multiple(j, t, &f);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let (pi, pj) = smallest_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // divisibility: pull in a row whose entries the pivot does not divide
            let p = s[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }

    let dec = SnfDecomposition { s, u, v };
    verify(a, &dec)?;
    Ok(dec)
}

fn verify(a: &IntMatrix, dec: &SnfDecomposition) -> Result<(), LinalgError> {
    let product = dec.u.mul(a)?.mul(&dec.v)?;
    if product != dec.s {
        return Err(LinalgError::Internal("S != U*A*V".into()));
    }
    for (name, w) in [("U", &dec.u), ("V", &dec.v)] {
        if !w.determinant()?.abs().is_one() {
            return Err(LinalgError::Internal(format!("{name} is not unimodular")));
        }
    }
    let s = &dec.s;
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j && !s[(i, j)].is_zero() {
                return Err(LinalgError::Internal("S is not diagonal".into()));
            }
        }
    }
    let diag = dec.diagonal();
    for w in diag.windows(2) {
        if w[0].is_zero() {
            if !w[1].is_zero() {
                return Err(LinalgError::Internal("zero before nonzero on diagonal".into()));
            }
        } else if w[0].is_negative() || !w[1].is_multiple_of(&w[0]) {
            return Err(LinalgError::Internal("divisibility chain broken".into()));
        }
    }
    Ok(())
}

fn smallest_nonzero(s: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in r0..s.rows() {
        for j in c0..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                let unit = ax.is_one();
                best = Some(((i, j), ax));
                if unit {
                    return best.map(|b| b.0);
                }
            }
        }
    }
    best.map(|b| b.0)
}

/// Smallest nonzero entry in row `t` or column `t` (from `t` on).
fn smallest_in_cross(s: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = ((t, t), s[(t, t)].abs());
    for i in t + 1..s.rows() {
        let x = s[(i, t)].abs();
        if !x.is_zero() && x < best.1 {
            best = ((i, t), x);
        }
    }
    for j in t + 1..s.cols() {
        let x = s[(t, j)].abs();
        if !x.is_zero() && x < best.1 {
            best = ((t, j), x);
        }
    }
    best.0
}

/// Quotient rounded to nearest, so remainders satisfy |r| <= |d|/2.
fn nearest_quotient(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    // r has the sign of d, so stepping q up moves r towards zero either way
    if (&r * 2i32).abs() > d.abs() {
        q + 1
    } else {
        q
    }
}

/// Integer solvability of `A·x = b` through the Smith normal form.
///
/// Returns a witness `x` with `A·x = b` exactly, or `None` if no integer
/// solution exists.
pub fn has_integer_solution(
    a: &IntMatrix,
    b: &IntVector,
) -> Result<Option<IntVector>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} rows, right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let dec = smith_normal_form(a)?;
    let ub = dec.u.mul_vec(b)?;
    let mut y = IntVector::zeros(a.cols());
    for i in 0..a.rows() {
        let d = if i < a.cols() {
            dec.s[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !ub[i].is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = ub[i].div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    let x = dec.v.mul_vec(&y)?;
    if a.mul_vec(&x)? != *b {
        return Err(LinalgError::Internal("integer witness fails A*x = b".into()));
    }
    Ok(Some(x))
}
