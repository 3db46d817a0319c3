//! Exact invariants of CP¹-bundles over simply-connected 4-manifolds and of
//! their conifold transitions.
//!
//! The crate is organized bottom-up:
//!
//! * [`lattice`]: integer symmetric bilinear forms (signature, unimodularity,
//!   characteristic vectors, block sums).
//! * [`fourfold`]: closed simply-connected 4-manifolds described by their
//!   intersection form, `w₂` and an optional integral lift used as `c₁(TN)`.
//! * [`bundle`]: rank-two complex bundles identified with their Chern data.
//! * [`sixfold`]: Wall–Jupp invariant systems of simply-connected 6-manifolds
//!   with torsion-free homology, and constructors for `P(E)`, `♯ S⁶`, `♯ CP̄³`.
//! * [`transitions`]: the two conifold transitions of `P(E)` and the local
//!   model systems `M₁`, `M₂`.
//! * [`equiv`]: bounded `GL(r, ℤ)` witness search and finite-field
//!   fingerprints that certify distinctness.
//!
//! Every type is generic over an exact integer [`Scalar`]. Arithmetic on
//! fixed-width scalars is checked and reports [`Error::Overflow`] instead of
//! wrapping. The aliases below fix the scalar to `i64` (the fast path) or
//! [`BigInt`] (never overflows).

pub mod bundle;
pub mod equiv;
pub mod fourfold;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod sixfold;
pub mod transitions;

mod error;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use scalar::Scalar;

pub type IntersectionForm = lattice::IntersectionForm<i64>;
pub type FourManifold = fourfold::FourManifold<i64>;
pub type RankTwoBundle = bundle::RankTwoBundle<i64>;
pub type InvariantSystem = sixfold::InvariantSystem<i64>;
pub type CubicForm = sixfold::CubicForm<i64>;
pub type TransitionResult = transitions::TransitionResult<i64>;
pub type IsomorphismWitness = equiv::IsomorphismWitness<i64>;
pub type DistinctnessCertificate = equiv::DistinctnessCertificate;

pub type BigIntersectionForm = lattice::IntersectionForm<BigInt>;
pub type BigFourManifold = fourfold::FourManifold<BigInt>;
pub type BigRankTwoBundle = bundle::RankTwoBundle<BigInt>;
pub type BigInvariantSystem = sixfold::InvariantSystem<BigInt>;
pub type BigTransitionResult = transitions::TransitionResult<BigInt>;
pub type BigIsomorphismWitness = equiv::IsomorphismWitness<BigInt>;
