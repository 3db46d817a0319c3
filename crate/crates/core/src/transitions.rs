//! Conifold transitions of `P(E)` along a canonical Lagrangian 3-sphere, and
//! the local model systems `M_k`.
//!
//! The two transitions are diffeomorphic to `P(E₁)` over `N ♯ CP̄²` and to
//! `P(E₂) ♯ CP̄³` over `N ♯ S⁴ = N`, where
//! `c₁(E_k) = (c₁(E), −σ_k*)` and `⟨c₂(E_k)⟩ = ⟨c₂(E)⟩ − 1`.

use crate::bundle::RankTwoBundle;
use crate::fourfold::{FourManifold, Standard};
use crate::sixfold::{CubicForm, InvariantSystem};
use crate::{Error, Result};
use crate::scalar::Scalar;

/// Both transitions of one `(N, E)` input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionResult<T> {
    /// `P(E₁)`, over `N ♯ CP̄²`.
    pub z1: InvariantSystem<T>,
    /// `P(E₂) ♯ CP̄³`, with `E₂` over `N`.
    pub z2: InvariantSystem<T>,
    pub e1: RankTwoBundle<T>,
    pub e2: RankTwoBundle<T>,
    pub base: FourManifold<T>,
    pub bundle: RankTwoBundle<T>,
    /// True when the sphere's orientation was reversed, which exchanges the
    /// two diffeomorphism types (and so `z1/e1` with `z2/e2`).
    pub swapped: bool,
}

/// Transitions in the fixed `(k = 1, k = 2)` order.
pub fn conifold_transition<T: Scalar>(
    base: &FourManifold<T>,
    bundle: &RankTwoBundle<T>,
) -> Result<TransitionResult<T>> {
    conifold_transition_ordered(base, bundle, false)
}

/// Same as [`conifold_transition`], optionally with the two sides exchanged.
pub fn conifold_transition_ordered<T: Scalar>(
    base: &FourManifold<T>,
    bundle: &RankTwoBundle<T>,
    swap: bool,
) -> Result<TransitionResult<T>> {
    if bundle.base() != base {
        return Err(Error::BaseMismatch);
    }
    let c2 = bundle.c2().sub_c(&T::one())?;

    let base1 = base.connected_sum(&FourManifold::standard(Standard::CP2bar));
    let mut c1 = bundle.c1().to_vec();
    c1.push(T::int(-1));
    let e1 = RankTwoBundle::new(base1.clone(), c1, c2.clone())?;

    let base2 = base.connected_sum(&FourManifold::standard(Standard::S4));
    let e2 = RankTwoBundle::new(base2.clone(), bundle.c1().to_vec(), c2)?;

    let z1 = InvariantSystem::projectivize(&base1, &e1)?;
    let z2 = InvariantSystem::projectivize(&base2, &e2)?.blowup_point();

    let (z1, z2, e1, e2) = if swap { (z2, z1, e2, e1) } else { (z1, z2, e1, e2) };
    Ok(TransitionResult {
        z1,
        z2,
        e1,
        e2,
        base: base.clone(),
        bundle: bundle.clone(),
        swapped: swap,
    })
}

/// The local model `M_k` (`k ∈ {1, 2}`) in the basis `(x_k, z_k)`:
///
/// | `z³` | `z x²` | `x z²` | `x³` |
/// |------|--------|--------|------|
/// | `(1 + (−1)^k)/2` | `1` | `−1` | `0` |
///
/// with `⟨p₁ x⟩ = 0`, `⟨p₁ z⟩ = 2(1 + (−1)^k)`, `w₂ = 0`, `b₃ = 0` and
/// `c₁ = 2x`.
pub fn mk_system<T: Scalar>(k: u32) -> Result<InvariantSystem<T>> {
    let sign: i64 = match k {
        1 => -1,
        2 => 1,
        _ => return Err(Error::InvalidTransitionIndex(k)),
    };
    let (x, z) = (0, 1);
    let mut mu = CubicForm::zeros(2);
    mu.set(z, z, z, T::int((1 + sign) / 2));
    mu.set(z, x, x, T::one());
    mu.set(x, z, z, T::int(-1));
    mu.set(x, x, x, T::zero());
    InvariantSystem::new(
        mu,
        vec![T::zero(), T::int(2 * (1 + sign))],
        vec![0, 0],
        0,
        Some(vec![T::int(2), T::zero()]),
        vec![format!("x{k}"), format!("z{k}")],
    )
}
