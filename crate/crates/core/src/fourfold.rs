//! Closed simply-connected oriented 4-manifolds and their connected sums.
//!
//! A [`FourManifold`] is its intersection form in an explicit basis
//! `y_1, …, y_n` of `H²(N; ℤ)`, the class of `w₂(TN)` in that basis, and
//! optionally an integral lift of `w₂` used as `c₁(TN)`.
//!
//! Simply-connectedness and torsion-freeness cannot be checked from this data.
//! They are carried as a declared flag that downstream invariant systems
//! inherit.

use std::fmt;
use std::str::FromStr;

use crate::lattice::IntersectionForm;
use crate::scalar::{parities, Scalar};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FourManifold<T> {
    label: String,
    form: IntersectionForm<T>,
    w2: Vec<u8>,
    c1_tangent: Option<Vec<T>>,
    simply_connected: bool,
}

/// The catalog pieces connected sums are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Standard {
    S4,
    CP2,
    CP2bar,
    S2xS2,
}

impl Standard {
    pub const ALL: [Standard; 4] = [Standard::S4, Standard::CP2, Standard::CP2bar, Standard::S2xS2];

    pub fn name(self) -> &'static str {
        match self {
            Standard::S4 => "S4",
            Standard::CP2 => "CP2",
            Standard::CP2bar => "CP2bar",
            Standard::S2xS2 => "S2xS2",
        }
    }
}

impl fmt::Display for Standard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Standard {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Standard::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownManifold(s.to_string()))
    }
}

impl<T: Scalar> FourManifold<T> {
    /// Validates and assembles a manifold description: the form must be
    /// unimodular, `w2` characteristic, and `c1_tangent` (if any) a lift of
    /// `w2`.
    pub fn new(
        label: impl Into<String>,
        form: IntersectionForm<T>,
        w2: Vec<u8>,
        c1_tangent: Option<Vec<T>>,
    ) -> Result<Self> {
        form.require_unimodular()?;
        for (slot, &b) in w2.iter().enumerate() {
            if b > 1 {
                return Err(Error::NotMod2 {
                    slot,
                    value: i64::from(b),
                });
            }
        }
        if !form.is_characteristic(&w2)? {
            return Err(Error::NotCharacteristic);
        }
        if let Some(c1) = &c1_tangent {
            if c1.len() != form.rank() {
                return Err(Error::DimensionMismatch {
                    what: "c1_tangent",
                    expected: form.rank(),
                    found: c1.len(),
                });
            }
            if let Some(slot) = (0..c1.len()).find(|&i| c1[i].parity() != w2[i]) {
                return Err(Error::NotALift { slot });
            }
        }
        Ok(Self {
            label: label.into(),
            form,
            w2,
            c1_tangent,
            simply_connected: true,
        })
    }

    /// Catalog manifolds.
    ///
    /// The `CP̄²` generator `σ*` has square −1. Its tangent lift is `+1`: a
    /// `CP̄²` summand is the exceptional piece of a blowup, whose `c₁`
    /// changes by `−PD(exceptional) = σ*`.
    pub fn standard(which: Standard) -> Self {
        let one = T::one;
        let (form, w2, c1) = match which {
            Standard::S4 => (IntersectionForm::empty(), vec![], vec![]),
            Standard::CP2 => (
                IntersectionForm::diagonal(&[one()]),
                vec![1],
                vec![T::int(3)],
            ),
            Standard::CP2bar => (
                IntersectionForm::diagonal(&[T::int(-1)]),
                vec![1],
                vec![one()],
            ),
            Standard::S2xS2 => (
                IntersectionForm::hyperbolic(),
                vec![0, 0],
                vec![T::int(2), T::int(2)],
            ),
        };
        Self {
            label: which.name().to_string(),
            form,
            w2,
            c1_tangent: Some(c1),
            simply_connected: true,
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(Self::standard(name.parse()?))
    }

    /// `self ♯ other`: block-sum form, concatenated `w₂`, concatenated
    /// tangent lifts when both sides have one.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let label = if other.label == "S4" {
            self.label.clone()
        } else if self.label == "S4" {
            other.label.clone()
        } else {
            format!("{} # {}", self.label, other.label)
        };
        let c1_tangent = match (&self.c1_tangent, &other.c1_tangent) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Self {
            label,
            form: self.form.direct_sum(&other.form),
            w2: self.w2.iter().chain(&other.w2).copied().collect(),
            c1_tangent,
            simply_connected: self.simply_connected && other.simply_connected,
        }
    }

    /// Marks the manifold as outside (or inside) the simply-connected,
    /// torsion-free class the classification applies to.
    pub fn with_simply_connected(mut self, flag: bool) -> Self {
        self.simply_connected = flag;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn form(&self) -> &IntersectionForm<T> {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn w2(&self) -> &[u8] {
        &self.w2
    }

    pub fn c1_tangent(&self) -> Option<&[T]> {
        self.c1_tangent.as_deref()
    }

    pub fn simply_connected(&self) -> bool {
        self.simply_connected
    }

    pub fn basis_label(i: usize) -> String {
        format!("y{}", i + 1)
    }

    pub fn signature(&self) -> Result<i64> {
        self.form.signature()
    }

    /// `⟨p₁(TN), [N]⟩ = 3σ(N)`.
    pub fn p1_number(&self) -> Result<i64> {
        self.signature()?.checked_mul(3).ok_or(Error::Overflow)
    }

    /// Re-checks the Wu condition on the stored data.
    pub fn w2_is_characteristic(&self) -> Result<bool> {
        self.form.is_characteristic(&self.w2)
    }

    pub fn c1_tangent_mod2(&self) -> Option<Vec<u8>> {
        self.c1_tangent.as_deref().map(parities)
    }
}
