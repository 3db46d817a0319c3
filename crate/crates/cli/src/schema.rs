//! JSON documents read and written by the CLI (schema `conifold/v1`).
//!
//! Every integer vector is written in basis order next to the basis labels,
//! so the fiber slot `a`, the base slots `y_i` and blowup slots `z'` are
//! unambiguous.

use std::collections::BTreeMap;

use conifold::equiv::Fingerprint;
use conifold::lattice::IntersectionForm;
use conifold::sixfold::CubicForm;
use conifold::{
    DistinctnessCertificate, FourManifold, InvariantSystem, IsomorphismWitness, RankTwoBundle,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA: &str = "conifold/v1";

/// A 4-manifold: a catalog/connected-sum expression such as
/// `"CP2 # 3 CP2bar"`, or an explicit form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ManifoldDoc {
    Expression(String),
    Explicit(ExplicitManifold),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitManifold {
    #[serde(default)]
    pub label: Option<String>,
    pub matrix: Vec<Vec<i64>>,
    pub w2: Vec<i64>,
    #[serde(default)]
    pub c1_tangent: Option<Vec<i64>>,
    #[serde(default = "yes")]
    pub simply_connected: bool,
}

fn yes() -> bool {
    true
}

impl ExplicitManifold {
    pub fn from_manifold(m: &FourManifold) -> Self {
        Self {
            label: Some(m.label().to_string()),
            matrix: m.form().matrix().clone(),
            w2: m.w2().iter().map(|&b| i64::from(b)).collect(),
            c1_tangent: m.c1_tangent().map(<[i64]>::to_vec),
            simply_connected: m.simply_connected(),
        }
    }

    pub fn to_manifold(&self) -> Result<FourManifold> {
        let form = IntersectionForm::new(self.matrix.clone())?;
        let w2 = mod2_vector(&self.w2, "w2")?;
        let label = self.label.clone().unwrap_or_else(|| "N".to_string());
        Ok(FourManifold::new(label, form, w2, self.c1_tangent.clone())?
            .with_simply_connected(self.simply_connected))
    }
}

pub fn mod2_vector(v: &[i64], what: &str) -> Result<Vec<u8>> {
    v.iter()
        .enumerate()
        .map(|(i, &x)| match x {
            0 | 1 => Ok(x as u8),
            _ => Err(CliError::Validation(format!(
                "{what} entry {i} is {x}; expected 0 or 1"
            ))),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleDoc {
    #[serde(default)]
    pub c1: Option<Vec<i64>>,
    #[serde(default)]
    pub c2: i64,
}

/// A bundle together with its base, as echoed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleReport {
    pub base: ExplicitManifold,
    pub c1: Vec<i64>,
    pub c2: i64,
}

impl BundleReport {
    pub fn from_bundle(e: &RankTwoBundle) -> Self {
        Self {
            base: ExplicitManifold::from_manifold(e.base()),
            c1: e.c1().to_vec(),
            c2: *e.c2(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuEntry {
    pub index: [usize; 3],
    pub value: i64,
}

/// An invariant system. `mu` lists every sorted index triple; triples left
/// out of an input document are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub rank: usize,
    pub basis: Vec<String>,
    pub mu: Vec<MuEntry>,
    pub p1: Vec<i64>,
    pub w2: Vec<i64>,
    #[serde(default)]
    pub b3: u64,
    #[serde(default)]
    pub euler_characteristic: Option<i64>,
    #[serde(default)]
    pub c1_class: Option<Vec<i64>>,
    #[serde(default = "yes")]
    pub simply_connected: bool,
}

impl SystemDoc {
    pub fn from_system(s: &InvariantSystem) -> Self {
        Self {
            rank: s.rank(),
            basis: s.basis().to_vec(),
            mu: s
                .mu()
                .entries()
                .map(|(index, &value)| MuEntry { index, value })
                .collect(),
            p1: s.p1().to_vec(),
            w2: s.w2().iter().map(|&b| i64::from(b)).collect(),
            b3: s.b3(),
            euler_characteristic: Some(s.euler_characteristic()),
            c1_class: s.c1_class().map(<[i64]>::to_vec),
            simply_connected: s.simply_connected(),
        }
    }

    pub fn to_system(&self) -> Result<InvariantSystem> {
        let r = self.rank;
        let mut mu = CubicForm::zeros(r);
        let mut seen = BTreeMap::new();
        for e in &self.mu {
            let [i, j, k] = e.index;
            if i >= r || j >= r || k >= r {
                return Err(CliError::Validation(format!(
                    "mu index {:?} out of range for rank {r}",
                    e.index
                )));
            }
            let mut key = e.index;
            key.sort_unstable();
            if let Some(prev) = seen.insert(key, e.value) {
                if prev != e.value {
                    return Err(CliError::Validation(format!(
                        "mu not symmetric: {:?} given as {prev} and {}",
                        key, e.value
                    )));
                }
            }
            mu.set(i, j, k, e.value);
        }
        let basis = if self.basis.is_empty() && r > 0 {
            (0..r).map(|i| format!("e{}", i + 1)).collect()
        } else {
            self.basis.clone()
        };
        let s = InvariantSystem::new(
            mu,
            self.p1.clone(),
            mod2_vector(&self.w2, "w2")?,
            self.b3,
            self.c1_class.clone(),
            basis,
        )?
        .with_simply_connected(self.simply_connected);
        if let Some(chi) = self.euler_characteristic {
            if chi != s.euler_characteristic() {
                return Err(CliError::Validation(format!(
                    "euler_characteristic {chi} inconsistent with rank and b3 (expected {})",
                    s.euler_characteristic()
                )));
            }
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    /// Column `i` is the image of the left system's basis vector `i`.
    pub matrix: Vec<Vec<i64>>,
    pub preserves_c1: bool,
}

impl WitnessDoc {
    pub fn from_witness(w: &IsomorphismWitness) -> Self {
        Self {
            matrix: w.matrix.clone(),
            preserves_c1: w.preserves_c1,
        }
    }

    pub fn to_witness(&self) -> IsomorphismWitness {
        IsomorphismWitness {
            matrix: self.matrix.clone(),
            preserves_c1: self.preserves_c1,
        }
    }
}

/// `[μ(x,x,x) mod p, p₁·x mod p, μ(w̃,x,x) mod 2, count]`.
pub type FingerprintRow = [u64; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateDoc {
    Rank {
        left: usize,
        right: usize,
    },
    B3 {
        left: u64,
        right: u64,
    },
    Fingerprint {
        prime: u32,
        left_cubic_zeros: u64,
        right_cubic_zeros: u64,
        left: Vec<FingerprintRow>,
        right: Vec<FingerprintRow>,
    },
}

fn rows(f: &Fingerprint) -> Vec<FingerprintRow> {
    f.counts
        .iter()
        .map(|(&(c, p, w), &n)| [u64::from(c), u64::from(p), u64::from(w), n])
        .collect()
}

fn from_rows(prime: u32, rows: &[FingerprintRow]) -> Result<Fingerprint> {
    let mut counts = BTreeMap::new();
    for &[c, p, w, n] in rows {
        let key = (
            u32::try_from(c).map_err(|_| CliError::Validation("fingerprint value".into()))?,
            u32::try_from(p).map_err(|_| CliError::Validation("fingerprint value".into()))?,
            u8::try_from(w).map_err(|_| CliError::Validation("fingerprint value".into()))?,
        );
        counts.insert(key, n);
    }
    Ok(Fingerprint { prime, counts })
}

impl CertificateDoc {
    pub fn from_certificate(c: &DistinctnessCertificate) -> Self {
        match c {
            DistinctnessCertificate::Rank { left, right } => Self::Rank {
                left: *left,
                right: *right,
            },
            DistinctnessCertificate::B3 { left, right } => Self::B3 {
                left: *left,
                right: *right,
            },
            DistinctnessCertificate::Fingerprint { prime, left, right } => Self::Fingerprint {
                prime: *prime,
                left_cubic_zeros: left.cubic_zeros(),
                right_cubic_zeros: right.cubic_zeros(),
                left: rows(left),
                right: rows(right),
            },
        }
    }

    pub fn to_certificate(&self) -> Result<DistinctnessCertificate> {
        Ok(match self {
            Self::Rank { left, right } => DistinctnessCertificate::Rank {
                left: *left,
                right: *right,
            },
            Self::B3 { left, right } => DistinctnessCertificate::B3 {
                left: *left,
                right: *right,
            },
            Self::Fingerprint {
                prime, left, right, ..
            } => DistinctnessCertificate::Fingerprint {
                prime: *prime,
                left: from_rows(*prime, left)?,
                right: from_rows(*prime, right)?,
            },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Isomorphic,
    Distinct,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOptionsDoc {
    pub bound: u32,
    pub primes: Vec<u32>,
    pub check_c1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub schema: String,
    pub command: String,
    pub input: serde_json::Value,
    pub system: SystemDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub schema: String,
    pub command: String,
    pub base: ExplicitManifold,
    pub bundle: BundleReport,
    pub swapped: bool,
    pub e1: BundleReport,
    pub e2: BundleReport,
    pub z1: SystemDoc,
    pub z2: SystemDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema: String,
    pub command: String,
    pub options: CompareOptionsDoc,
    pub left: SystemDoc,
    pub right: SystemDoc,
    pub verdict: Verdict,
    pub witness: Option<WitnessDoc>,
    pub certificate: Option<CertificateDoc>,
    /// False when an input was declared outside the simply-connected,
    /// torsion-free class: the verdict then concerns the invariant systems
    /// only, not diffeomorphism types.
    pub classification_applies: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub command: String,
    pub checks: Vec<CheckDoc>,
    pub passed: bool,
}

/// Any report this tool writes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Invariants(InvariantsReport),
    Transition(TransitionReport),
    Compare(CompareReport),
    Verify(VerifyReport),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
