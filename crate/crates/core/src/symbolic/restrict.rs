//! Restriction of a symbolic family to the members satisfying a sentence.
//!
//! A sentence has finite support, so within any omega-indexed node only the
//! branches whose guard atoms meet the support need individual treatment;
//! all deeper branches keep or drop wholesale according to the sentence's
//! value on the all-default prefix. The result is a direct union of
//! cylinder-guarded pieces over the same global atoms.

use crate::logic::Sentence;

use super::{Guard, SymbolicError, SymbolicFamily};

use SymbolicFamily::*;

impl SymbolicFamily {
    /// The subfamily of members satisfying `phi`, as a family over the
    /// same atoms.
    pub fn restrict(&self, phi: &Sentence) -> Result<SymbolicFamily, SymbolicError> {
        // Canonicalizing up front keeps tautologies and contradictions
        // exact: restricting by a tautology returns the family unchanged.
        let phi = crate::logic::canonical(phi)?;
        self.restrict_simplified(&phi)
    }

    fn restrict_simplified(&self, phi: &Sentence) -> Result<SymbolicFamily, SymbolicError> {
        match phi {
            Sentence::True => return Ok(self.clone()),
            Sentence::False => return Ok(Empty),
            _ => {}
        }
        let support_bound = phi.support().iter().map(|a| a.0 + 1).max().unwrap_or(0);
        let keep_tail = phi.eval_with(&|_| false);

        let restricted = match self {
            Empty => Empty,
            Fin(points) => {
                SymbolicFamily::fin(points.iter().filter(|p| p.eval(phi)).cloned())
            }
            Full => {
                let atoms: Vec<u32> = phi.support().iter().map(|a| a.0).collect();
                let rows = 1u64 << atoms.len();
                let mut pieces = Vec::new();
                let mut hits = 0u64;
                for row in 0..rows {
                    let val = |a: crate::logic::AtomId| {
                        let j = atoms.iter().position(|&x| x == a.0).unwrap();
                        row >> j & 1 == 1
                    };
                    if phi.eval_with(&val) {
                        hits += 1;
                        let guard = Guard::from_pairs(
                            atoms
                                .iter()
                                .enumerate()
                                .map(|(j, &a)| (a, row >> j & 1 == 1)),
                        );
                        pieces.push(SymbolicFamily::guard(guard, Full));
                    }
                }
                if hits == rows {
                    Full
                } else {
                    SymbolicFamily::disjoint_unchecked(pieces)
                }
            }
            EMinimal { step, offset } => {
                let mut pieces = Vec::new();
                let mut position = *offset;
                while position < support_bound {
                    let point = super::PointTheory::one_hot(position);
                    if point.eval(phi) {
                        pieces.push(SymbolicFamily::fin([point]));
                    }
                    position += step;
                }
                if keep_tail {
                    // `position` is the first lattice point at or beyond
                    // the support; re-root the tail past the support.
                    pieces.push(SymbolicFamily::guard(
                        Guard::zeros(support_bound),
                        EMinimal {
                            step: *step,
                            offset: position - support_bound,
                        },
                    ));
                }
                SymbolicFamily::disjoint_unchecked(pieces)
            }
            OmegaSum(child) => {
                let mut pieces = Vec::new();
                for i in 0..support_bound {
                    let guard = Guard::one_hot_prefix(i);
                    let local = guard.project_sentence(phi);
                    let piece = child.restrict_simplified(&local)?;
                    pieces.push(SymbolicFamily::guard(guard, piece));
                }
                if keep_tail {
                    pieces.push(SymbolicFamily::guard(
                        Guard::zeros(support_bound),
                        self.clone(),
                    ));
                }
                SymbolicFamily::disjoint_unchecked(pieces)
            }
            LimitTower {
                limit,
                skip,
                closed,
            } => {
                let mut pieces = Vec::new();
                for i in 0..support_bound {
                    let guard = Guard::one_hot_prefix(i);
                    let local = guard.project_sentence(phi);
                    let branch = self.limit_tower_branch(i as u64);
                    pieces.push(SymbolicFamily::guard(
                        guard,
                        branch.restrict_simplified(&local)?,
                    ));
                }
                if keep_tail {
                    pieces.push(SymbolicFamily::guard(
                        Guard::zeros(support_bound),
                        LimitTower {
                            limit: limit.clone(),
                            skip: skip + support_bound as u64,
                            closed: *closed,
                        },
                    ));
                }
                SymbolicFamily::disjoint_unchecked(pieces)
            }
            Union(children) => {
                let k = children.len() as u32;
                let mut pieces = Vec::new();
                for (j, c) in children.iter().enumerate() {
                    let guard = if (j as u32) < k - 1 {
                        Guard::one_hot_prefix(j as u32)
                    } else {
                        Guard::zeros(k - 1)
                    };
                    let local = guard.project_sentence(phi);
                    pieces.push(SymbolicFamily::guard(guard, c.restrict_simplified(&local)?));
                }
                SymbolicFamily::disjoint_unchecked(pieces)
            }
            Guard(g, child) => {
                let local = g.project_sentence(phi);
                SymbolicFamily::guard(g.clone(), child.restrict_simplified(&local)?)
            }
            Disjoint(pieces) => SymbolicFamily::disjoint_unchecked(
                pieces
                    .iter()
                    .map(|p| p.restrict_simplified(phi))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Ok(restricted)
    }

    /// Partial satisfaction: some member contains the sentence.
    pub fn rhd_pt(&self, phi: &Sentence) -> Result<bool, SymbolicError> {
        Ok(!self.restrict(phi)?.is_empty_family())
    }

    /// Total satisfaction: every member contains the sentence.
    pub fn rhd_tt(&self, phi: &Sentence) -> Result<bool, SymbolicError> {
        Ok(self
            .restrict(&crate::logic::not(phi.clone()))?
            .is_empty_family())
    }
}
