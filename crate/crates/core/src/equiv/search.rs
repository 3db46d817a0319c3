//! Bounded column-by-column search for a `GL(r, ℤ)` witness.
//!
//! Entries range over `[−bound, bound]` in the order `0, 1, −1, 2, −2, …`;
//! candidate columns are ordered lexicographically in that order with the
//! first coordinate most significant, and columns are fixed left to right.
//! The first verified witness in that order is returned, so the result does
//! not depend on whether the top level runs in parallel.
//!
//! Pruning:
//! * a candidate image `v` of `e_i` must already match `μ(e_i,e_i,e_i)`,
//!   `p₁(e_i)` and the parity of `μ(w̃, e_i, e_i)`;
//! * each new column must satisfy every cubic-form equation that involves
//!   only the columns chosen so far.
//!
//! The step budget bounds candidate generation (`(2·bound+1)^r` vectors) and,
//! separately, the number of candidate tests inside each first-column branch.
//! Both counts are deterministic, so exceeding the budget is reproducible.

use rayon::prelude::*;

use crate::equiv::{transports_c1, verify_witness, IsomorphismWitness};
use crate::matrix::{self, Matrix};
use crate::scalar::{dot, Scalar};
use crate::sixfold::InvariantSystem;
use crate::{Error, Result};

pub const DEFAULT_BOUND: u32 = 3;
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub bound: u32,
    /// Also require `A·c₁ = c₁'`.
    pub check_c1: bool,
    pub step_budget: u64,
    /// Split the first column across rayon workers.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            bound: DEFAULT_BOUND,
            check_c1: false,
            step_budget: DEFAULT_STEP_BUDGET,
            parallel: true,
        }
    }
}

impl SearchOptions {
    pub fn with_bound(bound: u32) -> Self {
        Self {
            bound,
            ..Self::default()
        }
    }
}

/// `0, 1, −1, 2, −2, …, bound, −bound`.
fn entry_order(bound: u32) -> Vec<i64> {
    std::iter::once(0)
        .chain((1..=i64::from(bound)).flat_map(|v| [v, -v]))
        .collect()
}

struct Search<'a, T> {
    source: &'a InvariantSystem<T>,
    target: &'a InvariantSystem<T>,
    vectors: Vec<Vec<T>>,
    /// Indices into `vectors` admissible as the image of `e_i`.
    candidates: Vec<Vec<usize>>,
    opts: SearchOptions,
}

enum Branch<T> {
    Found(Matrix<T>),
    Exceeded,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(
        source: &'a InvariantSystem<T>,
        target: &'a InvariantSystem<T>,
        opts: SearchOptions,
    ) -> Result<Self> {
        let r = source.rank();
        let order: Vec<T> = entry_order(opts.bound)
            .into_iter()
            .map(|v| T::from_i64(v).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let base = order.len() as u64;
        let total = (0..r).try_fold(1u64, |acc, _| acc.checked_mul(base));
        match total {
            Some(t) if t <= opts.step_budget => {}
            _ => {
                return Err(Error::BudgetExceeded {
                    budget: opts.step_budget,
                })
            }
        }

        let w_source = source.mu().contract(&source.w2_lift())?;
        let w_target = target.mu().contract(&target.w2_lift())?;
        let wants: Vec<(T, T, u8)> = (0..r)
            .map(|i| {
                (
                    source.mu().get(i, i, i).clone(),
                    source.p1()[i].clone(),
                    w_source[i][i].parity(),
                )
            })
            .collect();

        let mut vectors = Vec::new();
        let mut candidates = vec![Vec::new(); r];
        let mut digits = vec![0usize; r];
        'outer: loop {
            if digits.iter().any(|&d| d != 0) {
                let v: Vec<T> = digits.iter().map(|&d| order[d].clone()).collect();
                let p1v = dot(target.p1(), &v)?;
                let mut fits: Vec<usize> = (0..r).filter(|&i| wants[i].1 == p1v).collect();
                if !fits.is_empty() {
                    let cube = target.mu().cube(&v)?;
                    let wv = matrix::mat_vec(&w_target, &v)?;
                    let wpar = dot(&v, &wv)?.parity();
                    fits.retain(|&i| wants[i].0 == cube && wants[i].2 == wpar);
                    if !fits.is_empty() {
                        let idx = vectors.len();
                        vectors.push(v);
                        for i in fits {
                            candidates[i].push(idx);
                        }
                    }
                }
            }
            // advance the odometer; the last coordinate varies fastest
            let mut pos = r;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < order.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
        Ok(Self {
            source,
            target,
            vectors,
            candidates,
            opts,
        })
    }

    fn run(&self) -> Result<Option<Matrix<T>>> {
        let r = self.source.rank();
        if r == 0 {
            return self.accept(&[]);
        }
        let branch = |&c0: &usize| -> Option<Result<Branch<T>>> {
            let mut steps = 0u64;
            let mut cols = vec![c0];
            let mut forms = match self.target.mu().contract(&self.vectors[c0]) {
                Ok(f) => vec![f],
                Err(e) => return Some(Err(e)),
            };
            match self.descend(&mut cols, &mut forms, &mut steps) {
                Ok(None) => None,
                Ok(Some(b)) => Some(Ok(b)),
                Err(e) => Some(Err(e)),
            }
        };
        let first = if self.opts.parallel {
            self.candidates[0].par_iter().find_map_first(branch)
        } else {
            self.candidates[0].iter().find_map(branch)
        };
        match first {
            None => Ok(None),
            Some(Ok(Branch::Found(m))) => Ok(Some(m)),
            Some(Ok(Branch::Exceeded)) => Err(Error::BudgetExceeded {
                budget: self.opts.step_budget,
            }),
            Some(Err(e)) => Err(e),
        }
    }

    fn accept(&self, cols: &[usize]) -> Result<Option<Matrix<T>>> {
        let columns: Vec<Vec<T>> = cols.iter().map(|&c| self.vectors[c].clone()).collect();
        let a = if columns.is_empty() {
            Vec::new()
        } else {
            matrix::from_columns(&columns)
        };
        if verify_witness(self.source, self.target, &a, self.opts.check_c1)? {
            Ok(Some(a))
        } else {
            Ok(None)
        }
    }

    fn descend(
        &self,
        cols: &mut Vec<usize>,
        forms: &mut Vec<Matrix<T>>,
        steps: &mut u64,
    ) -> Result<Option<Branch<T>>> {
        let j = cols.len();
        let r = self.source.rank();
        if j == r {
            return Ok(self.accept(cols)?.map(Branch::Found));
        }
        let mu1 = self.source.mu();
        'cand: for &c in &self.candidates[j] {
            *steps += 1;
            if *steps > self.opts.step_budget {
                return Ok(Some(Branch::Exceeded));
            }
            let v = &self.vectors[c];
            for a in 0..j {
                // u = μ₂(col_a, ·, v)
                let u = matrix::mat_vec(&forms[a], v)?;
                if dot(v, &u)? != *mu1.get(a, j, j) {
                    continue 'cand;
                }
                for b in a..j {
                    if dot(&self.vectors[cols[b]], &u)? != *mu1.get(a, b, j) {
                        continue 'cand;
                    }
                }
            }
            cols.push(c);
            forms.push(self.target.mu().contract(v)?);
            let found = self.descend(cols, forms, steps)?;
            cols.pop();
            forms.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Searches for a witness `S1 → S2` with entries in `[−bound, bound]`.
///
/// `Ok(None)` means no witness exists within the bound; it does not prove the
/// systems distinct. Fails with [`Error::RankMismatch`] before searching when
/// the ranks differ, and with [`Error::BudgetExceeded`] when the step budget
/// runs out.
pub fn find_isomorphism<T: Scalar>(
    s1: &InvariantSystem<T>,
    s2: &InvariantSystem<T>,
    opts: &SearchOptions,
) -> Result<Option<IsomorphismWitness<T>>> {
    if s1.rank() != s2.rank() {
        return Err(Error::RankMismatch {
            left: s1.rank(),
            right: s2.rank(),
        });
    }
    if opts.bound == 0 {
        return Err(Error::InvalidBound);
    }
    if s1.b3() != s2.b3() {
        return Ok(None);
    }
    if opts.check_c1 && (s1.c1_class().is_none() || s2.c1_class().is_none()) {
        return Ok(None);
    }
    let search = Search::new(s1, s2, *opts)?;
    match search.run()? {
        Some(matrix) => {
            let preserves_c1 = transports_c1(s1, s2, &matrix)?;
            Ok(Some(IsomorphismWitness {
                matrix,
                preserves_c1,
            }))
        }
        None => Ok(None),
    }
}
