use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinalgError;

pub type Rational = BigRational;

/// Dense matrix of exact rationals, row-major as nested vectors.
pub type RatMatrix = Vec<Vec<Rational>>;

fn check_square(a: &RatMatrix) -> Result<usize, LinalgError> {
    let n = a.len();
    if let Some(row) = a.iter().find(|r| r.len() != n) {
        return Err(LinalgError::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    Ok(n)
}

/// Exact solution of a square system; `Singular` when no unique solution exists.
///
/// Gaussian elimination over normalized fractions (every `BigRational` is kept
/// in lowest terms).
pub fn solve_rational(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "{n}x{n} system, right-hand side of length {}",
            b.len()
        )));
    }
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(bi.clone())).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(LinalgError::Singular)?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for x in m[k][k..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in k..=n {
                let d = &m[k][j] * &f;
                m[i][j] -= d;
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().expect("augmented")).collect())
}

/// Exact determinant.
pub fn determinant_rational(a: &RatMatrix) -> Result<Rational, LinalgError> {
    let n = check_square(a)?;
    let mut m = a.clone();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].recip();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let d = &m[k][j] * &f;
                m[i][j] -= d;
            }
        }
    }
    Ok(det)
}

/// Rank of an arbitrary (possibly rectangular) rational matrix.
pub fn rank_rational(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].recip();
        for i in rank + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..cols {
                let d = &m[rank][j] * &f;
                m[i][j] -= d;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> Rational {
    use num_bigint::BigInt;
    Rational::from_integer(BigInt::from(n))
}
