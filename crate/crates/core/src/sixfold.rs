//! Wall–Jupp invariant systems of simply-connected 6-manifolds with
//! torsion-free homology: `b₃`, the cup-product cubic form on `H²`, the
//! `p₁` pairing and `w₂`.
//!
//! Basis slot 0 of a projectivization is always the fiber class
//! `a = c₁(L*)`; the pulled-back base classes `π*y_i` follow in base order.
//! Blowups append a slot `z'` for each `CP̄³` summand.

use crate::bundle::RankTwoBundle;
use crate::fourfold::FourManifold;
use crate::matrix::{self, Matrix};
use crate::scalar::{lift_mod2, parities, Scalar};
use crate::{Error, Result};

/// A fully symmetric trilinear form, stored once per sorted index triple
/// `i ≤ j ≤ k` in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicForm<T> {
    rank: usize,
    coeffs: Vec<T>,
}

fn tri(m: usize) -> usize {
    m * (m + 1) / 2
}

fn sorted(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut t = [i, j, k];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

impl<T: Scalar> CubicForm<T> {
    pub fn zeros(rank: usize) -> Self {
        let len = rank * (rank + 1) * (rank + 2) / 6;
        Self {
            rank,
            coeffs: vec![T::zero(); len],
        }
    }

    /// Builds a form from a function on all `rank³` index triples, rejecting
    /// values that are not invariant under permutation.
    pub fn from_dense(rank: usize, f: impl Fn(usize, usize, usize) -> T) -> Result<Self> {
        let mut form = Self::zeros(rank);
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let v = f(i, j, k);
                    let (a, b, c) = sorted(i, j, k);
                    if (i, j, k) == (a, b, c) {
                        form.set(a, b, c, v);
                    } else if *form.get(a, b, c) != v {
                        return Err(Error::AsymmetricTensor { i, j, k });
                    }
                }
            }
        }
        Ok(form)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let (i, j, k) = sorted(i, j, k);
        let r = self.rank;
        let before_i: usize = (0..i).map(|a| tri(r - a)).sum();
        let before_j: usize = (i..j).map(|b| r - b).sum();
        before_i + before_j + (k - j)
    }

    /// `μ(e_i, e_j, e_k)`, in any index order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &T {
        &self.coeffs[self.index(i, j, k)]
    }

    /// Sets `μ(e_i, e_j, e_k)` and all its permutations.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: T) {
        let idx = self.index(i, j, k);
        self.coeffs[idx] = value;
    }

    /// Sorted triples with their values, in storage order.
    pub fn entries(&self) -> impl Iterator<Item = ([usize; 3], &T)> + '_ {
        let r = self.rank;
        (0..r)
            .flat_map(move |i| (i..r).flat_map(move |j| (j..r).map(move |k| [i, j, k])))
            .zip(self.coeffs.iter())
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                what: "cubic form argument",
                expected: self.rank,
                found: len,
            });
        }
        Ok(())
    }

    /// The bilinear form `μ(x, ·, ·)` as a symmetric matrix.
    pub fn contract(&self, x: &[T]) -> Result<Matrix<T>> {
        self.check_len(x.len())?;
        let r = self.rank;
        let mut out = vec![vec![T::zero(); r]; r];
        for j in 0..r {
            for k in j..r {
                let mut acc = T::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() {
                        acc = acc.add_c(&xi.mul_c(self.get(i, j, k))?)?;
                    }
                }
                out[k][j] = acc.clone();
                out[j][k] = acc;
            }
        }
        Ok(out)
    }

    /// `μ(x, y, z)`.
    pub fn eval(&self, x: &[T], y: &[T], z: &[T]) -> Result<T> {
        self.check_len(y.len())?;
        self.check_len(z.len())?;
        let b = self.contract(x)?;
        let bz = matrix::mat_vec(&b, z)?;
        crate::scalar::dot(y, &bz)
    }

    /// `μ(x, x, x)`.
    pub fn cube(&self, x: &[T]) -> Result<T> {
        self.eval(x, x, x)
    }

    /// Block sum: no mixed terms between the two summands.
    pub fn block_sum(&self, other: &Self) -> Self {
        let r1 = self.rank;
        let mut out = Self::zeros(r1 + other.rank);
        for ([i, j, k], v) in self.entries() {
            out.set(i, j, k, v.clone());
        }
        for ([i, j, k], v) in other.entries() {
            out.set(r1 + i, r1 + j, r1 + k, v.clone());
        }
        out
    }

    /// `μ'(e_i, e_j, e_k) = μ(A e_i, A e_j, A e_k)` for an `rank × m` matrix
    /// `A` whose columns are the images.
    pub fn pullback(&self, a: &[Vec<T>]) -> Result<Self> {
        if a.len() != self.rank {
            return Err(Error::DimensionMismatch {
                what: "pullback matrix rows",
                expected: self.rank,
                found: a.len(),
            });
        }
        let m = a.first().map_or(0, Vec::len);
        let cols: Vec<Vec<T>> = (0..m).map(|j| matrix::column(a, j)).collect();
        let mut out = Self::zeros(m);
        for i in 0..m {
            let b = self.contract(&cols[i])?;
            for j in i..m {
                let bj = matrix::mat_vec(&b, &cols[j])?;
                for k in j..m {
                    out.set(i, j, k, crate::scalar::dot(&bj, &cols[k])?);
                }
            }
        }
        Ok(out)
    }
}

/// The invariants that determine a simply-connected 6-manifold with
/// torsion-free homology up to diffeomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantSystem<T> {
    mu: CubicForm<T>,
    p1: Vec<T>,
    w2: Vec<u8>,
    b3: u64,
    c1_class: Option<Vec<T>>,
    basis: Vec<String>,
    simply_connected: bool,
}

impl<T: Scalar> InvariantSystem<T> {
    pub fn new(
        mu: CubicForm<T>,
        p1: Vec<T>,
        w2: Vec<u8>,
        b3: u64,
        c1_class: Option<Vec<T>>,
        basis: Vec<String>,
    ) -> Result<Self> {
        let r = mu.rank();
        let check = |what: &'static str, len: usize| {
            if len == r {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    what,
                    expected: r,
                    found: len,
                })
            }
        };
        check("p1", p1.len())?;
        check("w2", w2.len())?;
        check("basis labels", basis.len())?;
        for (slot, &b) in w2.iter().enumerate() {
            if b > 1 {
                return Err(Error::NotMod2 {
                    slot,
                    value: i64::from(b),
                });
            }
        }
        if let Some(c1) = &c1_class {
            check("c1_class", c1.len())?;
            if let Some(slot) = (0..r).find(|&i| c1[i].parity() != w2[i]) {
                return Err(Error::C1NotALift { slot });
            }
        }
        Ok(Self {
            mu,
            p1,
            w2,
            b3,
            c1_class,
            basis,
            simply_connected: true,
        })
    }

    pub fn with_simply_connected(mut self, flag: bool) -> Self {
        self.simply_connected = flag;
        self
    }

    pub fn rank(&self) -> usize {
        self.mu.rank()
    }

    pub fn mu(&self) -> &CubicForm<T> {
        &self.mu
    }

    pub fn p1(&self) -> &[T] {
        &self.p1
    }

    pub fn w2(&self) -> &[u8] {
        &self.w2
    }

    /// An integral lift of `w₂` with entries in {0, 1}.
    pub fn w2_lift(&self) -> Vec<T> {
        lift_mod2(&self.w2)
    }

    pub fn b3(&self) -> u64 {
        self.b3
    }

    pub fn c1_class(&self) -> Option<&[T]> {
        self.c1_class.as_deref()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    /// Whether every input this system was built from was declared
    /// simply-connected with torsion-free homology.
    pub fn simply_connected(&self) -> bool {
        self.simply_connected
    }

    /// `χ = 2 + 2·b₂ − b₃` (Poincaré duality with `b₁ = 0`).
    pub fn euler_characteristic(&self) -> i64 {
        2 + 2 * self.rank() as i64 - self.b3 as i64
    }

    /// The projectivization `P(E) → N` via Leray–Hirsch:
    /// `H*(P(E)) = H*(N)[a] / (a² + π*c₁(E)·a + π*c₂(E))`.
    pub fn projectivize(base: &FourManifold<T>, bundle: &RankTwoBundle<T>) -> Result<Self> {
        if bundle.base() != base {
            return Err(Error::BaseMismatch);
        }
        let n = base.rank();
        let form = base.form();
        let c1 = bundle.c1();
        let c1_sq = bundle.c1_squared()?;
        let q_c1 = form.apply(c1)?;

        let mut mu = CubicForm::zeros(n + 1);
        mu.set(0, 0, 0, c1_sq.sub_c(bundle.c2())?);
        for i in 0..n {
            mu.set(0, 0, i + 1, q_c1[i].neg_c()?);
            for j in i..n {
                mu.set(0, i + 1, j + 1, form.entry(i, j).clone());
            }
        }

        let mut p1 = vec![T::zero(); n + 1];
        p1[0] = T::from_i64(base.p1_number()?)
            .ok_or(Error::Overflow)?
            .add_c(&bundle.discriminant()?)?;

        let mut w2 = vec![0u8];
        w2.extend(base.w2().iter().zip(bundle.w2()).map(|(a, b)| (a ^ b) & 1));

        let c1_class = match base.c1_tangent() {
            Some(t) => {
                let mut v = vec![T::int(2)];
                for (ti, ci) in t.iter().zip(c1) {
                    v.push(ti.add_c(ci)?);
                }
                Some(v)
            }
            None => None,
        };

        let mut basis = vec!["a".to_string()];
        basis.extend((0..n).map(FourManifold::<T>::basis_label));

        Ok(Self::new(mu, p1, w2, 0, c1_class, basis)?
            .with_simply_connected(base.simply_connected()))
    }

    /// `CP̄³` in the basis `z'` given by the hyperplane class, with the
    /// fundamental class reversed:
    ///
    /// * `c(TCP³) = (1 + g)⁴`, so `c₁ = 4g` (even, hence `w₂ = 0`) and
    ///   `p₁ = c₁² − 2c₂ = 16g² − 12g² = 4g²`;
    /// * `⟨g³, [CP³]⟩ = 1`, so reversing orientation gives
    ///   `μ(z', z', z') = −1` and `⟨p₁ ∪ z', [CP̄³]⟩ = −4`.
    ///
    /// The stored `c1_class` entry `2` is the change of `c₁` under a point
    /// blowup expressed in this basis: the exceptional divisor is Poincaré
    /// dual to `−z'`, and `c₁` drops by twice that class.
    pub fn cp3bar() -> Self {
        let mut mu = CubicForm::zeros(1);
        mu.set(0, 0, 0, T::int(-1));
        Self::new(
            mu,
            vec![T::int(-4)],
            vec![0],
            0,
            Some(vec![T::int(2)]),
            vec!["z'".to_string()],
        )
        .expect("CP3bar data is consistent")
    }

    /// Connected sum of 6-manifolds: block sum of the cubic forms,
    /// concatenation of `p₁`, `w₂` and `c₁` data, `b₃` additive.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let c1_class = match (&self.c1_class, &other.c1_class) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Self {
            mu: self.mu.block_sum(&other.mu),
            p1: self.p1.iter().chain(&other.p1).cloned().collect(),
            w2: self.w2.iter().chain(&other.w2).copied().collect(),
            b3: self.b3 + other.b3,
            c1_class,
            basis: self.basis.iter().chain(&other.basis).cloned().collect(),
            simply_connected: self.simply_connected && other.simply_connected,
        }
    }

    /// Blowup at a point, i.e. `♯ CP̄³`. The new slot is labelled `z'`
    /// (`z'2`, `z'3`, … for repeated blowups).
    pub fn blowup_point(&self) -> Self {
        let existing = self.basis.iter().filter(|b| b.starts_with("z'")).count();
        let mut out = self.connected_sum(&Self::cp3bar());
        if existing > 0 {
            let last = out.basis.len() - 1;
            out.basis[last] = format!("z'{}", existing + 1);
        }
        out
    }

    /// `♯ S⁶` changes nothing.
    pub fn sum_with_s6(&self) -> Self {
        self.clone()
    }

    /// The system transported along `A ∈ GL(r, ℤ)`: the result `S'` satisfies
    /// `μ'(Ax, Ay, Az) = μ(x, y, z)`, `p₁' ∘ A = p₁`, `w₂' = A·w₂` and
    /// `c₁' = A·c₁`, so that `A` is an isomorphism `self → S'`.
    pub fn transport(&self, a: &[Vec<T>]) -> Result<Self> {
        let r = self.rank();
        if a.len() != r || matrix::check_square(a)? != r {
            return Err(Error::DimensionMismatch {
                what: "transport matrix",
                expected: r,
                found: a.len(),
            });
        }
        let inv = matrix::inverse_unimodular(a)?;
        let mu = self.mu.pullback(&inv)?;
        // p1' = A^{-T} p1
        let p1 = matrix::mat_vec(&matrix::transpose(&inv), &self.p1)?;
        let w2 = parities(&matrix::mat_vec(a, &self.w2_lift())?);
        let c1_class = match &self.c1_class {
            Some(c) => Some(matrix::mat_vec(a, c)?),
            None => None,
        };
        let basis = (0..r).map(|i| format!("e{}", i + 1)).collect();
        Ok(Self {
            mu,
            p1,
            w2,
            b3: self.b3,
            c1_class,
            basis,
            simply_connected: self.simply_connected,
        })
    }

    /// Replaces the basis labels.
    pub fn with_basis(mut self, basis: Vec<String>) -> Result<Self> {
        if basis.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                what: "basis labels",
                expected: self.rank(),
                found: basis.len(),
            });
        }
        self.basis = basis;
        Ok(self)
    }
}
