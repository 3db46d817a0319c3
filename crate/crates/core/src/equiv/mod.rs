//! Deciding whether two invariant systems are isomorphic.
//!
//! Verdicts come in three kinds:
//!
//! * an [`IsomorphismWitness`]: an explicit `A ∈ GL(r, ℤ)` transporting the
//!   cubic form, `p₁` and `w₂` (and optionally `c₁`), found by a bounded
//!   search ([`find_isomorphism`]);
//! * a [`DistinctnessCertificate`]: rank, `b₃` or a `GL`-invariant
//!   fingerprint over a small prime field that differs ([`certify_distinct`]);
//! * neither: the pair is undecided. A failed bounded search proves nothing.
//!
//! A witness `A` maps the basis of the left system into the right one:
//! column `i` is the image of `e_i`.

mod fingerprint;
mod search;

pub use fingerprint::{fingerprint, Fingerprint, FINGERPRINT_PRIMES, MAX_FINGERPRINT_RANK};
pub use search::{find_isomorphism, SearchOptions, DEFAULT_BOUND, DEFAULT_STEP_BUDGET};

use crate::matrix::{self, Matrix};
use crate::scalar::{parities, Scalar};
use crate::sixfold::InvariantSystem;
use crate::{Error, Result};

/// Primes tried by default when certifying distinctness.
pub const DEFAULT_PRIMES: [u32; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsomorphismWitness<T> {
    pub matrix: Matrix<T>,
    /// Whether `A·c₁ = c₁'` holds (false when either side has no `c₁`).
    pub preserves_c1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DistinctnessCertificate {
    Rank { left: usize, right: usize },
    B3 { left: u64, right: u64 },
    Fingerprint {
        prime: u32,
        left: Fingerprint,
        right: Fingerprint,
    },
}

impl DistinctnessCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Rank { .. } => "rank",
            Self::B3 { .. } => "b3",
            Self::Fingerprint { .. } => "fingerprint",
        }
    }

    pub fn prime(&self) -> Option<u32> {
        match self {
            Self::Fingerprint { prime, .. } => Some(*prime),
            _ => None,
        }
    }

    /// Recomputes the named invariant on both systems and confirms that it
    /// still differs and matches the recorded data.
    pub fn recheck<T: Scalar>(
        &self,
        left: &InvariantSystem<T>,
        right: &InvariantSystem<T>,
    ) -> Result<bool> {
        Ok(match self {
            Self::Rank { left: l, right: r } => {
                l != r && *l == left.rank() && *r == right.rank()
            }
            Self::B3 { left: l, right: r } => l != r && *l == left.b3() && *r == right.b3(),
            Self::Fingerprint {
                prime,
                left: fl,
                right: fr,
            } => {
                fl != fr
                    && fingerprint(left, *prime)? == *fl
                    && fingerprint(right, *prime)? == *fr
            }
        })
    }
}

fn check_ranks<T: Scalar>(s1: &InvariantSystem<T>, s2: &InvariantSystem<T>) -> Result<usize> {
    if s1.rank() != s2.rank() {
        return Err(Error::RankMismatch {
            left: s1.rank(),
            right: s2.rank(),
        });
    }
    Ok(s1.rank())
}

/// Whether `A·c₁(S1) = c₁(S2)`; false when either class is absent.
pub fn transports_c1<T: Scalar>(
    s1: &InvariantSystem<T>,
    s2: &InvariantSystem<T>,
    a: &[Vec<T>],
) -> Result<bool> {
    match (s1.c1_class(), s2.c1_class()) {
        (Some(c1), Some(c2)) => Ok(matrix::mat_vec(a, c1)? == c2),
        _ => Ok(false),
    }
}

/// Checks every witness condition exactly:
/// `|det A| = 1`, `μ₂(A·, A·, A·) = μ₁`, `Aᵀ p₁₂ = p₁₁`, `A w₂₁ ≡ w₂₂`,
/// equal `b₃`, and with `check_c1` also `A c₁₁ = c₁₂`.
pub fn verify_witness<T: Scalar>(
    s1: &InvariantSystem<T>,
    s2: &InvariantSystem<T>,
    a: &[Vec<T>],
    check_c1: bool,
) -> Result<bool> {
    let r = check_ranks(s1, s2)?;
    if a.len() != r || a.iter().any(|row| row.len() != r) {
        return Err(Error::DimensionMismatch {
            what: "witness matrix",
            expected: r,
            found: a.len(),
        });
    }
    if s1.b3() != s2.b3() {
        return Ok(false);
    }
    if !matrix::determinant(a)?.abs().is_one() {
        return Ok(false);
    }
    if s2.mu().pullback(a)? != *s1.mu() {
        return Ok(false);
    }
    if matrix::mat_vec(&matrix::transpose(a), s2.p1())? != s1.p1() {
        return Ok(false);
    }
    if parities(&matrix::mat_vec(a, &s1.w2_lift())?) != s2.w2() {
        return Ok(false);
    }
    if check_c1 && !transports_c1(s1, s2, a)? {
        return Ok(false);
    }
    Ok(true)
}

/// Looks for a certificate that the two systems are not isomorphic: rank,
/// then `b₃`, then fingerprints at each prime in order. `None` means
/// inconclusive, including when the rank is too large to fingerprint.
pub fn certify_distinct<T: Scalar>(
    s1: &InvariantSystem<T>,
    s2: &InvariantSystem<T>,
    primes: &[u32],
) -> Result<Option<DistinctnessCertificate>> {
    if let Some(&p) = primes.iter().find(|p| !FINGERPRINT_PRIMES.contains(p)) {
        return Err(Error::UnsupportedPrime(p));
    }
    if s1.rank() != s2.rank() {
        return Ok(Some(DistinctnessCertificate::Rank {
            left: s1.rank(),
            right: s2.rank(),
        }));
    }
    if s1.b3() != s2.b3() {
        return Ok(Some(DistinctnessCertificate::B3 {
            left: s1.b3(),
            right: s2.b3(),
        }));
    }
    if s1.rank() > MAX_FINGERPRINT_RANK {
        return Ok(None);
    }
    for &p in primes {
        let (left, right) = (fingerprint(s1, p)?, fingerprint(s2, p)?);
        if left != right {
            return Ok(Some(DistinctnessCertificate::Fingerprint {
                prime: p,
                left,
                right,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::RankTwoBundle;
    use crate::fourfold::{FourManifold, Standard};
    use crate::transitions::{conifold_transition, mk_system};

    type S = InvariantSystem<i64>;
    type M = FourManifold<i64>;
    type E = RankTwoBundle<i64>;

    fn e2_blowup() -> S {
        let s4 = M::standard(Standard::S4);
        let e = E::new(s4.clone(), vec![], -1).unwrap();
        S::projectivize(&s4, &e).unwrap().blowup_point()
    }

    #[test]
    fn identity_witness() {
        let s = mk_system::<i64>(2).unwrap();
        assert!(verify_witness(&s, &s, &matrix::identity(2), true).unwrap());
    }

    #[test]
    fn identity_fails_on_perturbed_system() {
        let s = mk_system::<i64>(2).unwrap();
        let mut mu = s.mu().clone();
        mu.set(0, 0, 0, 5);
        let t = S::new(
            mu,
            s.p1().to_vec(),
            s.w2().to_vec(),
            0,
            None,
            s.basis().to_vec(),
        )
        .unwrap();
        assert!(!verify_witness(&s, &t, &matrix::identity(2), false).unwrap());
    }

    #[test]
    fn local_model_witness_k2() {
        // x ↦ a + z', z ↦ −z'
        let a = vec![vec![1, 0], vec![1, -1]];
        assert!(verify_witness(&mk_system(2).unwrap(), &e2_blowup(), &a, true).unwrap());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let cp2 = M::standard(Standard::CP2);
        let z1 = conifold_transition(&cp2, &E::trivial(cp2.clone())).unwrap().z1;
        let m = mk_system::<i64>(1).unwrap();
        assert_eq!(
            verify_witness(&z1, &m, &matrix::identity(3), false),
            Err(Error::RankMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn certificate_rechecks() {
        let s4 = M::standard(Standard::S4);
        let t = conifold_transition(&s4, &E::trivial(s4.clone())).unwrap();
        let cert = certify_distinct(&t.z1, &t.z2, &DEFAULT_PRIMES)
            .unwrap()
            .expect("distinct");
        assert_eq!(cert.kind(), "fingerprint");
        assert!(cert.recheck(&t.z1, &t.z2).unwrap());
        assert!(!cert.recheck(&t.z1, &t.z1).unwrap());
    }

    #[test]
    fn self_comparison_is_not_distinct() {
        let s = e2_blowup();
        assert_eq!(certify_distinct(&s, &s, &DEFAULT_PRIMES).unwrap(), None);
    }

    #[test]
    fn rank_certificate() {
        let m = mk_system::<i64>(1).unwrap();
        let c = S::cp3bar();
        let cert = certify_distinct(&m, &c, &[]).unwrap().unwrap();
        assert_eq!(cert, DistinctnessCertificate::Rank { left: 2, right: 1 });
        assert!(cert.recheck(&m, &c).unwrap());
    }

    #[test]
    fn bad_prime_is_rejected() {
        let s = S::cp3bar();
        assert_eq!(
            certify_distinct(&s, &s, &[11]),
            Err(Error::UnsupportedPrime(11))
        );
    }
}
