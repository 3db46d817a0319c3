//! Rank-two complex vector bundles over a 4-manifold, identified with their
//! Chern data: over a closed 4-manifold every pair `(c₁, c₂)` occurs and
//! determines the bundle.

use crate::fourfold::FourManifold;
use crate::scalar::{parities, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankTwoBundle<T> {
    base: FourManifold<T>,
    c1: Vec<T>,
    c2: T,
}

impl<T: Scalar> RankTwoBundle<T> {
    /// `c1` is given in the base's `y_i` basis; `c2` is `⟨c₂(E), [N]⟩`.
    pub fn new(base: FourManifold<T>, c1: Vec<T>, c2: T) -> Result<Self> {
        if c1.len() != base.rank() {
            return Err(Error::DimensionMismatch {
                what: "bundle c1",
                expected: base.rank(),
                found: c1.len(),
            });
        }
        Ok(Self { base, c1, c2 })
    }

    pub fn trivial(base: FourManifold<T>) -> Self {
        let c1 = vec![T::zero(); base.rank()];
        Self {
            base,
            c1,
            c2: T::zero(),
        }
    }

    pub fn base(&self) -> &FourManifold<T> {
        &self.base
    }

    pub fn c1(&self) -> &[T] {
        &self.c1
    }

    pub fn c2(&self) -> &T {
        &self.c2
    }

    /// `w₂(E) = c₁(E) mod 2`.
    pub fn w2(&self) -> Vec<u8> {
        parities(&self.c1)
    }

    /// `⟨c₁(E)², [N]⟩ = c1ᵀ Q c1`.
    pub fn c1_squared(&self) -> Result<T> {
        self.base.form().norm(&self.c1)
    }

    /// `⟨c₁(E)² − 4c₂(E), [N]⟩`, the twist-invariant part of `p₁(P(E))`.
    pub fn discriminant(&self) -> Result<T> {
        self.c1_squared()?.sub_c(&T::int(4).mul_c(&self.c2)?)
    }

    /// `E ⊗ L` for the line bundle with `c₁(L) = l`:
    /// `c₁' = c₁ + 2l`, `c₂' = c₂ + l·c₁ + l·l`.
    pub fn twist(&self, l: &[T]) -> Result<Self> {
        let form = self.base.form();
        if l.len() != form.rank() {
            return Err(Error::DimensionMismatch {
                what: "twisting class",
                expected: form.rank(),
                found: l.len(),
            });
        }
        let c1 = self
            .c1
            .iter()
            .zip(l)
            .map(|(c, li)| c.add_c(&li.add_c(li)?))
            .collect::<Result<Vec<_>>>()?;
        let c2 = self
            .c2
            .add_c(&form.pair(l, &self.c1)?)?
            .add_c(&form.norm(l)?)?;
        Ok(Self {
            base: self.base.clone(),
            c1,
            c2,
        })
    }
}
