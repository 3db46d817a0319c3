use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::sixfold::InvariantSystem;
use crate::{Error, Result};

pub const FINGERPRINT_PRIMES: [u32; 4] = [2, 3, 5, 7];
pub const MAX_FINGERPRINT_RANK: usize = 6;

/// The multiset of `(μ(x,x,x) mod p, p₁·x mod p, μ(w̃,x,x) mod 2)` over all
/// `x ∈ 𝔽_p^r`, stored as counts keyed by the triple.
///
/// The third component only makes sense for `p = 2`: for odd `p` a residue
/// `x` does not determine the parity of an integral lift, so it is recorded
/// as 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub prime: u32,
    pub counts: BTreeMap<(u32, u32, u8), u64>,
}

impl Fingerprint {
    /// Number of `x` with `μ(x,x,x) ≡ 0 (mod p)`.
    pub fn cubic_zeros(&self) -> u64 {
        self.counts
            .iter()
            .filter(|((c, _, _), _)| *c == 0)
            .map(|(_, n)| n)
            .sum()
    }
}

/// Computes the fingerprint of `s` over `𝔽_p` by exhausting `p^r` vectors.
pub fn fingerprint<T: Scalar>(s: &InvariantSystem<T>, prime: u32) -> Result<Fingerprint> {
    if !FINGERPRINT_PRIMES.contains(&prime) {
        return Err(Error::UnsupportedPrime(prime));
    }
    let r = s.rank();
    if r > MAX_FINGERPRINT_RANK {
        return Err(Error::RankTooLarge {
            what: "fingerprint",
            rank: r,
            max: MAX_FINGERPRINT_RANK,
        });
    }
    let p = u64::from(prime);

    // μ(x,x,x) = Σ_{i≤j≤k} m(i,j,k)·μ_ijk·x_i x_j x_k, m = number of distinct
    // orderings of the triple.
    let cubic: Vec<(usize, usize, usize, u64)> = s
        .mu()
        .entries()
        .filter_map(|([i, j, k], v)| {
            let mult = match (i == j, j == k) {
                (true, true) => 1,
                (true, false) | (false, true) => 3,
                (false, false) => 6,
            };
            let c = u64::from(v.residue(prime)) * mult % p;
            (c != 0).then_some((i, j, k, c))
        })
        .collect();
    let p1: Vec<u64> = s.p1().iter().map(|v| u64::from(v.residue(prime))).collect();

    // μ(w̃, ·, ·) mod 2, only consulted when p = 2.
    let w_form: Vec<Vec<u8>> = if prime == 2 {
        let w = s.w2();
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|k| {
                        (0..r)
                            .filter(|&i| w[i] == 1)
                            .fold(0u8, |acc, i| acc ^ s.mu().get(i, j, k).parity())
                    })
                    .collect()
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut counts = BTreeMap::new();
    let mut x = vec![0u64; r];
    loop {
        let c = cubic
            .iter()
            .fold(0, |acc, &(i, j, k, m)| (acc + m * (x[i] * x[j] % p) * x[k]) % p);
        let l = x.iter().zip(&p1).fold(0, |acc, (xi, pi)| (acc + xi * pi) % p);
        let w = if prime == 2 {
            let mut acc = 0u8;
            for j in 0..r {
                for k in 0..r {
                    acc ^= w_form[j][k] & (x[j] as u8) & (x[k] as u8);
                }
            }
            acc
        } else {
            0
        };
        *counts.entry((c as u32, l as u32, w)).or_insert(0u64) += 1;

        // next x in 𝔽_p^r
        let mut pos = 0;
        while pos < r {
            x[pos] += 1;
            if x[pos] < p {
                break;
            }
            x[pos] = 0;
            pos += 1;
        }
        if pos == r {
            break;
        }
    }
    Ok(Fingerprint { prime, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::RankTwoBundle;
    use crate::fourfold::{FourManifold, Standard};
    use crate::sixfold::CubicForm;
    use crate::transitions::{conifold_transition, mk_system};

    type S = InvariantSystem<i64>;

    #[test]
    fn rank_zero_fingerprint() {
        let s = S::new(CubicForm::zeros(0), vec![], vec![], 0, None, vec![]).unwrap();
        for p in FINGERPRINT_PRIMES {
            let f = fingerprint(&s, p).unwrap();
            assert_eq!(f.counts.into_iter().collect::<Vec<_>>(), vec![((0, 0, 0), 1)]);
        }
    }

    #[test]
    fn counts_sum_to_field_size() {
        let s = mk_system::<i64>(2).unwrap();
        for p in FINGERPRINT_PRIMES {
            let total: u64 = fingerprint(&s, p).unwrap().counts.values().sum();
            assert_eq!(total, u64::from(p * p));
        }
    }

    #[test]
    fn transition_sides_differ_at_five() {
        let s4 = FourManifold::<i64>::standard(Standard::S4);
        let t = conifold_transition(&s4, &RankTwoBundle::trivial(s4.clone())).unwrap();
        let f1 = fingerprint(&t.z1, 5).unwrap();
        let f2 = fingerprint(&t.z2, 5).unwrap();
        assert_ne!(f1, f2);
        // Brute-force zero counts of the two cubics over 𝔽₅²:
        // z1: −3st(s + t), z2: s³ − t³.
        let zeros = |f: &dyn Fn(i64, i64) -> i64| {
            (0..5)
                .flat_map(|s| (0..5).map(move |t| (s, t)))
                .filter(|&(s, t)| f(s, t).rem_euclid(5) == 0)
                .count() as u64
        };
        assert_eq!(f1.cubic_zeros(), zeros(&|s, t| -3 * s * t * (s + t)));
        assert_eq!(f2.cubic_zeros(), zeros(&|s, t| s * s * s - t * t * t));
        assert_eq!(f1.cubic_zeros(), 13);
        assert_eq!(f2.cubic_zeros(), 5);
    }

    #[test]
    fn rejects_large_rank_and_bad_prime() {
        let s = S::new(
            CubicForm::zeros(7),
            vec![0; 7],
            vec![0; 7],
            0,
            None,
            (0..7).map(|i| i.to_string()).collect(),
        )
        .unwrap();
        assert!(matches!(fingerprint(&s, 2), Err(Error::RankTooLarge { .. })));
        assert_eq!(
            fingerprint(&S::cp3bar(), 4),
            Err(Error::UnsupportedPrime(4))
        );
    }
}
