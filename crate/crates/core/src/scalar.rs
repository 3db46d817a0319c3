//! The exact integer scalar every invariant is computed in.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::{Error, Result};

/// An exact signed integer type: `i32`, `i64`, `i128` or `BigInt`.
///
/// Only checked arithmetic is used on scalars, so fixed-width types surface
/// overflow as [`Error::Overflow`].
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Converts a small constant. Panics only if `v` does not fit, which never
    /// happens for the constants used in this crate (|v| ≤ 4).
    fn int(v: i64) -> Self {
        Self::from_i64(v).expect("small constant fits every scalar type")
    }

    fn add_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    fn sub_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    fn mul_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    fn neg_c(&self) -> Result<Self> {
        Self::zero().sub_c(self)
    }

    /// Parity as a mod-2 residue (0 or 1), correct for negative values.
    fn parity(&self) -> u8 {
        if self.is_odd() {
            1
        } else {
            0
        }
    }

    /// Least nonnegative residue modulo a small positive modulus.
    fn residue(&self, modulus: u32) -> u32 {
        let m = Self::from_u32(modulus).expect("small modulus fits every scalar type");
        self.mod_floor(&m)
            .to_u32()
            .expect("residue is below the modulus")
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Checked dot product.
pub fn dot<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    let mut acc = T::zero();
    for (a, b) in x.iter().zip(y) {
        acc = acc.add_c(&a.mul_c(b)?)?;
    }
    Ok(acc)
}

/// Reduces an integer vector mod 2.
pub fn parities<T: Scalar>(x: &[T]) -> Vec<u8> {
    x.iter().map(Scalar::parity).collect()
}

/// Lifts a mod-2 vector to the integers with entries in {0, 1}.
pub fn lift_mod2<T: Scalar>(w: &[u8]) -> Vec<T> {
    w.iter().map(|&b| T::int(i64::from(b & 1))).collect()
}

/// Converts an `i64` slice into scalars.
pub fn from_i64s<T: Scalar>(xs: &[i64]) -> Vec<T> {
    xs.iter()
        .map(|&v| T::from_i64(v).expect("i64 fits the scalar type"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn overflow_is_reported() {
        assert_eq!(i64::MAX.add_c(&1), Err(Error::Overflow));
        assert_eq!(i32::MIN.neg_c(), Err(Error::Overflow));
        assert_eq!((1i64 << 40).mul_c(&(1i64 << 40)), Err(Error::Overflow));
    }

    #[test]
    fn bigint_never_overflows() {
        let big = BigInt::from(i64::MAX);
        let sq = big.mul_c(&big).unwrap();
        assert!(sq > BigInt::from(i64::MAX));
    }

    #[test]
    fn parity_and_residue_of_negatives() {
        assert_eq!((-3i64).parity(), 1);
        assert_eq!((-4i64).parity(), 0);
        assert_eq!((-1i64).residue(5), 4);
        assert_eq!(BigInt::from(-7).residue(3), 2);
    }
}
