//! Integer symmetric bilinear forms: the intersection form of a 4-manifold.
//!
//! The basis order is part of the data. Nothing here canonicalizes a form,
//! since downstream formulas are written against an explicit basis.

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

use crate::matrix::{self, Matrix};
use crate::scalar::{dot, Scalar};
use crate::{Error, Result};

/// Largest rank for which the exhaustive Wu-vector check is attempted.
pub const MAX_EXHAUSTIVE_RANK: usize = 20;

/// A symmetric integer matrix `Q[i][j] = ⟨y_i ∪ y_j, [N]⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionForm<T> {
    matrix: Matrix<T>,
}

/// Positive, negative and zero inertia indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

impl<T: Scalar> IntersectionForm<T> {
    /// Builds a form from a square symmetric matrix.
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        let n = matrix::check_square(&matrix)?;
        for i in 0..n {
            for j in i + 1..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { matrix })
    }

    /// Builds the form of a closed manifold: symmetric and unimodular.
    pub fn closed(matrix: Matrix<T>) -> Result<Self> {
        let form = Self::new(matrix)?;
        form.require_unimodular()?;
        Ok(form)
    }

    /// The rank-0 form of `S⁴`.
    pub fn empty() -> Self {
        Self { matrix: Vec::new() }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { T::zero() })
                    .collect()
            })
            .collect();
        Self { matrix }
    }

    /// The hyperbolic plane `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        Self {
            matrix: vec![vec![T::zero(), T::one()], vec![T::one(), T::zero()]],
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.matrix[i][j]
    }

    fn check_len(&self, what: &'static str, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                what,
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    /// `Q·x`.
    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_len("vector", x.len())?;
        matrix::mat_vec(&self.matrix, x)
    }

    /// `xᵀ Q y`.
    pub fn pair(&self, x: &[T], y: &[T]) -> Result<T> {
        self.check_len("vector", y.len())?;
        dot(x, &self.apply(y)?)
    }

    pub fn norm(&self, x: &[T]) -> Result<T> {
        self.pair(x, x)
    }

    pub fn determinant(&self) -> Result<T> {
        matrix::determinant(&self.matrix)
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.determinant()?.abs().is_one())
    }

    pub fn require_unimodular(&self) -> Result<()> {
        let det = self.determinant()?;
        if det.abs().is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular {
                det: det.to_string(),
            })
        }
    }

    /// Block sum `self ⊕ other`, the form of a connected sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, r2) = (self.rank(), other.rank());
        let mut matrix = vec![vec![T::zero(); r1 + r2]; r1 + r2];
        for i in 0..r1 {
            matrix[i][..r1].clone_from_slice(&self.matrix[i]);
        }
        for i in 0..r2 {
            matrix[r1 + i][r1..].clone_from_slice(&other.matrix[i]);
        }
        Self { matrix }
    }

    /// Inertia indices by Lagrange symmetric reduction over exact rationals.
    ///
    /// Pivot rule: the first nonzero diagonal entry; when the remaining
    /// diagonal is zero, the first nonzero off-diagonal pair `(i, j)` is split
    /// off as a hyperbolic block contributing one positive and one negative
    /// square.
    pub fn inertia(&self) -> Result<Inertia> {
        let mut m: Vec<Vec<Ratio<T>>> = self
            .matrix
            .iter()
            .map(|row| row.iter().cloned().map(Ratio::from_integer).collect())
            .collect();
        let mut inertia = Inertia {
            positive: 0,
            negative: 0,
            nullity: 0,
        };
        while !m.is_empty() {
            let n = m.len();
            if let Some(p) = (0..n).find(|&i| !m[i][i].is_zero()) {
                let d = m[p][p].clone();
                if d.is_positive() {
                    inertia.positive += 1;
                } else {
                    inertia.negative += 1;
                }
                let rest: Vec<usize> = (0..n).filter(|&k| k != p).collect();
                let mut next = Vec::with_capacity(rest.len());
                for &k in &rest {
                    let mut row = Vec::with_capacity(rest.len());
                    for &l in &rest {
                        let t = ratio_mul(&m[k][p], &m[p][l])?;
                        let t = t.checked_div(&d).ok_or(Error::Overflow)?;
                        row.push(m[k][l].checked_sub(&t).ok_or(Error::Overflow)?);
                    }
                    next.push(row);
                }
                m = next;
            } else if let Some((i, j)) = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero())
            {
                inertia.positive += 1;
                inertia.negative += 1;
                let b = m[i][j].clone();
                let rest: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
                let mut next = Vec::with_capacity(rest.len());
                for &k in &rest {
                    let mut row = Vec::with_capacity(rest.len());
                    for &l in &rest {
                        let t1 = ratio_mul(&m[k][i], &m[j][l])?;
                        let t2 = ratio_mul(&m[k][j], &m[i][l])?;
                        let t = t1
                            .checked_add(&t2)
                            .and_then(|t| t.checked_div(&b))
                            .ok_or(Error::Overflow)?;
                        row.push(m[k][l].checked_sub(&t).ok_or(Error::Overflow)?);
                    }
                    next.push(row);
                }
                m = next;
            } else {
                inertia.nullity += n;
                break;
            }
        }
        Ok(inertia)
    }

    /// `#positive − #negative` eigenvalues.
    pub fn signature(&self) -> Result<i64> {
        Ok(self.inertia()?.signature())
    }

    /// Wu test `Q(x, x) ≡ Q(w, x) (mod 2)` for all `x`, in the closed form
    /// `diag(Q) ≡ Q·w (mod 2)`.
    pub fn is_characteristic(&self, w: &[u8]) -> Result<bool> {
        self.check_len("w2", w.len())?;
        let n = self.rank();
        Ok((0..n).all(|i| {
            let qw = (0..n)
                .filter(|&j| w[j] & 1 == 1)
                .fold(0u8, |acc, j| acc ^ self.matrix[i][j].parity());
            qw == self.matrix[i][i].parity()
        }))
    }

    /// Same test by exhausting all of `(ℤ/2)^rank`; rank must be at most
    /// [`MAX_EXHAUSTIVE_RANK`].
    pub fn is_characteristic_exhaustive(&self, w: &[u8]) -> Result<bool> {
        self.check_len("w2", w.len())?;
        let n = self.rank();
        if n > MAX_EXHAUSTIVE_RANK {
            return Err(Error::RankTooLarge {
                what: "exhaustive characteristic check",
                rank: n,
                max: MAX_EXHAUSTIVE_RANK,
            });
        }
        // Row i of Q mod 2 as a bitmask.
        let rows: Vec<u32> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u32, |acc, (j, q)| acc | (u32::from(q.parity()) << j))
            })
            .collect();
        let wmask = w
            .iter()
            .enumerate()
            .fold(0u32, |acc, (j, &b)| acc | (u32::from(b & 1) << j));
        let pair = |x: u32, y: u32| -> u32 {
            (0..n)
                .filter(|&i| x >> i & 1 == 1)
                .map(|i| (rows[i] & y).count_ones())
                .sum::<u32>()
                & 1
        };
        Ok((0u32..1 << n).all(|x| pair(x, x) == pair(wmask, x)))
    }
}

fn ratio_mul<T: Scalar>(a: &Ratio<T>, b: &Ratio<T>) -> Result<Ratio<T>> {
    a.checked_mul(b).ok_or(Error::Overflow)
}
