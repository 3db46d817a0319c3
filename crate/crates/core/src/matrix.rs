//! Dense row-major integer matrices and the few exact operations the crate
//! needs on them.

use num_rational::Ratio;
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Zero};

use crate::scalar::{dot, Scalar};
use crate::{Error, Result};

/// Row-major dense matrix; `m[row][col]`.
pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Scalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Returns the dimension of a square matrix, or an error naming the bad row.
pub fn check_square<T>(m: &[Vec<T>]) -> Result<usize> {
    let n = m.len();
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
    }
    Ok(n)
}

pub fn transpose<T: Scalar>(m: &[Vec<T>]) -> Matrix<T> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mat_vec<T: Scalar>(m: &[Vec<T>], x: &[T]) -> Result<Vec<T>> {
    m.iter().map(|row| dot(row, x)).collect()
}

pub fn mul<T: Scalar>(a: &[Vec<T>], b: &[Vec<T>]) -> Result<Matrix<T>> {
    let bt = transpose(b);
    a.iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

/// Column `j` of `m`.
pub fn column<T: Scalar>(m: &[Vec<T>], j: usize) -> Vec<T> {
    m.iter().map(|row| row[j].clone()).collect()
}

/// Builds a matrix from its columns.
pub fn from_columns<T: Scalar>(cols: &[Vec<T>]) -> Matrix<T> {
    transpose(cols)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant<T: Scalar>(m: &[Vec<T>]) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Matrix<T> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul_c(&a[k][k])?.sub_c(&a[i][k].mul_c(&a[k][j])?)?;
                // Bareiss: the division is exact.
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg_c()
    } else {
        Ok(det)
    }
}

pub fn is_unimodular<T: Scalar>(m: &[Vec<T>]) -> Result<bool> {
    Ok(determinant(m)?.abs().is_one())
}

fn rat_sub_mul<T: Scalar>(a: &Ratio<T>, b: &Ratio<T>, c: &Ratio<T>) -> Result<Ratio<T>> {
    let prod = b.checked_mul(c).ok_or(Error::Overflow)?;
    a.checked_sub(&prod).ok_or(Error::Overflow)
}

/// Inverse of a `GL(n, ℤ)` matrix. Fails with [`Error::NotUnimodular`] when
/// `|det| ≠ 1`.
pub fn inverse_unimodular<T: Scalar>(m: &[Vec<T>]) -> Result<Matrix<T>> {
    let n = check_square(m)?;
    let det = determinant(m)?;
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular {
            det: det.to_string(),
        });
    }
    let mut a: Vec<Vec<Ratio<T>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .cloned()
                .map(Ratio::from_integer)
                .chain((0..n).map(|j| {
                    if i == j {
                        Ratio::one()
                    } else {
                        Ratio::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, p);
        let pivot = a[k][k].clone();
        for v in a[k].iter_mut() {
            *v = v.checked_div(&pivot).ok_or(Error::Overflow)?;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                a[i][j] = rat_sub_mul(&a[i][j], &f, &a[k][j])?;
            }
        }
    }
    Ok(a.into_iter()
        .map(|row| row[n..].iter().map(Ratio::to_integer).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix<i64> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant::<i64>(&[]).unwrap(), 1);
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])).unwrap(), -1);
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 1]])).unwrap(), 1);
        assert_eq!(
            determinant(&m(&[&[0, 2, 1], &[3, 0, 4], &[1, 5, 0]])).unwrap(),
            // cofactor expansion along row 0: -2*(0-4) + 1*(15-0) = 23
            23
        );
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])).unwrap(), 0);
    }

    #[test]
    fn inverse_round_trips() {
        let a = m(&[&[1, 1, 0], &[0, 1, 0], &[2, 3, -1]]);
        let inv = inverse_unimodular(&a).unwrap();
        assert_eq!(mul(&a, &inv).unwrap(), identity::<i64>(3));
    }

    #[test]
    fn inverse_rejects_non_unimodular() {
        let a = m(&[&[2, 0], &[0, 1]]);
        assert!(matches!(
            inverse_unimodular(&a),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let a = vec![vec![1i64, 0], vec![0]];
        assert!(matches!(determinant(&a), Err(Error::NotSquare { row: 1, .. })));
    }
}
