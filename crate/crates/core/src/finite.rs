//! Explicit families of complete theories over a finite 0-ary language.
//!
//! A complete theory over `Q0..Q{n-1}` is one of the `2^n` assignments, so a
//! family is just a set of bitmasks. Every relation of the calculus is
//! decided here by exhaustive computation; the symbolic module is checked
//! against this ground truth wherever the two overlap.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{self, AtomId, Assignment, LogicError, Sentence};
use crate::ordinal::RankDegree;

/// Upper bound on the atom count; keeps each family under 2^12 members.
pub const MAX_ATOMS: u32 = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiniteFamilyError {
    #[error("atom count {0} exceeds the maximum of {1}")]
    TooManyAtoms(u32, u32),
    #[error("member {0:#b} uses atoms beyond the declared count {1}")]
    MemberOutOfRange(u32, u32),
    #[error("sentence mentions {0}, outside the {1}-atom language")]
    SupportOverflow(AtomId, u32),
    #[error("families have different atom counts: {0} vs {1}")]
    AtomCountMismatch(u32, u32),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// A family of complete theories over `Q0..Q{n-1}`; members are bitmasks
/// with bit `i` giving the value of `Q_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteFamily {
    atom_count: u32,
    members: BTreeSet<u32>,
}

impl FiniteFamily {
    pub fn new(
        atom_count: u32,
        members: impl IntoIterator<Item = u32>,
    ) -> Result<Self, FiniteFamilyError> {
        if atom_count > MAX_ATOMS {
            return Err(FiniteFamilyError::TooManyAtoms(atom_count, MAX_ATOMS));
        }
        let members: BTreeSet<u32> = members.into_iter().collect();
        for &m in &members {
            if atom_count < 32 && m >> atom_count != 0 {
                return Err(FiniteFamilyError::MemberOutOfRange(m, atom_count));
            }
        }
        Ok(FiniteFamily {
            atom_count,
            members,
        })
    }

    /// All `2^n` theories of the language.
    pub fn all(atom_count: u32) -> Result<Self, FiniteFamilyError> {
        FiniteFamily::new(atom_count, 0..1u32 << atom_count)
    }

    pub fn empty(atom_count: u32) -> Self {
        FiniteFamily {
            atom_count,
            members: BTreeSet::new(),
        }
    }

    pub fn atom_count(&self) -> u32 {
        self.atom_count
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, member: u32) -> bool {
        self.members.contains(&member)
    }

    pub fn assignment(&self, member: u32) -> Assignment {
        Assignment::from_pairs((0..self.atom_count).map(|i| (i, member >> i & 1 == 1)))
    }

    fn check_support(&self, sentence: &Sentence) -> Result<(), FiniteFamilyError> {
        for a in sentence.support() {
            if a.0 >= self.atom_count {
                return Err(FiniteFamilyError::SupportOverflow(a, self.atom_count));
            }
        }
        Ok(())
    }

    fn satisfies(&self, member: u32, sentence: &Sentence) -> bool {
        sentence.eval_with(&|a: AtomId| member >> a.0 & 1 == 1)
    }

    /// The members satisfying the sentence, over the same language.
    pub fn neighborhood(&self, sentence: &Sentence) -> Result<FiniteFamily, FiniteFamilyError> {
        self.check_support(sentence)?;
        Ok(FiniteFamily {
            atom_count: self.atom_count,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| self.satisfies(m, sentence))
                .collect(),
        })
    }

    /// Rank and degree: the empty family has rank -1, a nonempty family of
    /// `k` theories has rank 0 and degree `k`.
    pub fn rank_degree(&self) -> RankDegree {
        if self.members.is_empty() {
            RankDegree::Empty
        } else {
            RankDegree::ranked_nat(0, self.members.len() as u64)
        }
    }

    /// Partial satisfaction: the sentence holds in at least one member.
    pub fn rhd_pt(&self, sentence: &Sentence) -> Result<bool, FiniteFamilyError> {
        Ok(!self.neighborhood(sentence)?.is_empty())
    }

    /// Total satisfaction: the sentence holds in every member.
    pub fn rhd_tt(&self, sentence: &Sentence) -> Result<bool, FiniteFamilyError> {
        Ok(self.neighborhood(sentence)?.len() == self.len())
    }

    /// Exact satisfaction count `|P_phi|`.
    pub fn rhd_pt_lambda(&self, sentence: &Sentence) -> Result<usize, FiniteFamilyError> {
        Ok(self.neighborhood(sentence)?.len())
    }

    /// The complete DNF with exactly this family as its model set; `false`
    /// for the empty family.
    pub fn characteristic_sentence(&self) -> Sentence {
        self.members
            .iter()
            .map(|&m| {
                (0..self.atom_count)
                    .map(|i| {
                        if m >> i & 1 == 1 {
                            logic::atom(i)
                        } else {
                            logic::not(logic::atom(i))
                        }
                    })
                    .reduce(logic::and)
                    .unwrap_or(Sentence::True)
            })
            .reduce(logic::or)
            .unwrap_or(Sentence::False)
    }

    /// The semantic representations of the union and intersection of the
    /// member theories.
    pub fn delta_nabla(&self) -> DeltaNabla {
        DeltaNabla {
            delta_formula: self.characteristic_sentence(),
            nabla_models: self.clone(),
        }
    }

    /// A sentence holding on all of `self` and none of `other`, when the
    /// families are disjoint. Finite families are E-closed, so disjointness
    /// is exactly the separability criterion.
    pub fn separating_sentence(
        &self,
        other: &FiniteFamily,
    ) -> Result<Option<Sentence>, FiniteFamilyError> {
        if self.atom_count != other.atom_count {
            return Err(FiniteFamilyError::AtomCountMismatch(
                self.atom_count,
                other.atom_count,
            ));
        }
        if self.members.intersection(&other.members).next().is_some() {
            return Ok(None);
        }
        Ok(Some(self.characteristic_sentence()))
    }

    /// The set of cardinalities `|P_phi|` over all sentences: every subset
    /// of a finite family is definable by its DNF, so this is `{1..|P|}`
    /// for nonempty families.
    pub fn pt_spectrum(&self) -> BTreeSet<usize> {
        (1..=self.members.len()).collect()
    }

    /// Generic sentence: the neighborhood has the same rank and degree as
    /// the family itself.
    pub fn is_generic(&self, sentence: &Sentence) -> Result<bool, FiniteFamilyError> {
        Ok(self.neighborhood(sentence)?.rank_degree() == self.rank_degree())
    }

    /// The sentence isolates exactly one theory of the family.
    pub fn is_p_complete(&self, sentence: &Sentence) -> Result<bool, FiniteFamilyError> {
        Ok(self.neighborhood(sentence)?.len() == 1)
    }

    pub fn intersection(&self, other: &FiniteFamily) -> Result<FiniteFamily, FiniteFamilyError> {
        if self.atom_count != other.atom_count {
            return Err(FiniteFamilyError::AtomCountMismatch(
                self.atom_count,
                other.atom_count,
            ));
        }
        Ok(FiniteFamily {
            atom_count: self.atom_count,
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    pub fn union(&self, other: &FiniteFamily) -> Result<FiniteFamily, FiniteFamilyError> {
        if self.atom_count != other.atom_count {
            return Err(FiniteFamilyError::AtomCountMismatch(
                self.atom_count,
                other.atom_count,
            ));
        }
        Ok(FiniteFamily {
            atom_count: self.atom_count,
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    /// Bitstring form of a member, atom `Q0` leftmost.
    pub fn member_bitstring(&self, member: u32) -> String {
        (0..self.atom_count)
            .map(|i| if member >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for FiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fin(n={}){{", self.atom_count)?;
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.member_bitstring(m))?;
        }
        write!(f, "}}")
    }
}

/// Semantic view of the nabla/delta sentence sets of a family: membership
/// in the intersection of the theories is entailment from the
/// characteristic sentence, membership in the union is satisfiability
/// within the member set.
#[derive(Debug, Clone)]
pub struct DeltaNabla {
    delta_formula: Sentence,
    nabla_models: FiniteFamily,
}

impl DeltaNabla {
    /// The canonical sentence whose models are exactly the family; `false`
    /// for the empty family (whose intersection is all sentences).
    pub fn delta_formula(&self) -> &Sentence {
        &self.delta_formula
    }

    pub fn family(&self) -> &FiniteFamily {
        &self.nabla_models
    }

    /// `psi` belongs to every member theory.
    pub fn in_delta(&self, psi: &Sentence) -> Result<bool, FiniteFamilyError> {
        self.nabla_models.check_support(psi)?;
        Ok(logic::entails(&self.delta_formula, psi)?)
    }

    /// `psi` belongs to at least one member theory.
    pub fn in_nabla(&self, psi: &Sentence) -> Result<bool, FiniteFamilyError> {
        self.nabla_models.rhd_pt(psi)
    }
}
