//! Structural recursion for rank/degree and the two spectra.

use std::collections::BTreeSet;
use std::fmt;

use crate::ordinal::{degree_sum_at_max, Ordinal, RankDegree, RankValue};

use super::{CardinalValue, SymbolicFamily};

use SymbolicFamily::*;

impl SymbolicFamily {
    /// Rank and degree by structural recursion: the empty family has rank
    /// -1; `k` explicit points have rank 0 and degree `k`; an e-minimal
    /// node has rank 1 and degree 1; an omega-sum of a ranked child is the
    /// successor rank with degree 1 (its branches are infinitely many
    /// pairwise inconsistent neighborhoods of the child's rank); guarded
    /// unions combine by maximum rank with degrees summing at the maximum;
    /// the full family has rank infinity.
    pub fn rank_degree(&self) -> RankDegree {
        match self {
            Empty => RankDegree::Empty,
            Fin(points) => RankDegree::ranked_nat(0, points.len() as u64),
            EMinimal { .. } => RankDegree::ranked_nat(1, 1),
            OmegaSum(child) => match child.rank_degree() {
                RankDegree::Empty => RankDegree::Empty,
                RankDegree::Infinite => RankDegree::Infinite,
                RankDegree::Ranked { rank, .. } => RankDegree::ranked(rank.succ(), 1),
            },
            Union(children) | Disjoint(children) => {
                let parts: Vec<RankDegree> = children.iter().map(|c| c.rank_degree()).collect();
                degree_sum_at_max(&parts)
            }
            Guard(_, child) => child.rank_degree(),
            Full => RankDegree::Infinite,
            LimitTower { limit, .. } => RankDegree::ranked(limit.clone(), 1),
        }
    }

    /// The family with every full-kernel cylinder removed: the union of
    /// the maximal ranked material. Empty exactly when every consistent
    /// restriction of the family has rank infinity.
    pub fn ranked_part(&self) -> SymbolicFamily {
        match self {
            Empty | Fin(_) | EMinimal { .. } | LimitTower { .. } => self.clone(),
            Full => Empty,
            OmegaSum(child) => SymbolicFamily::omega_sum(child.ranked_part()),
            Union(children) => {
                SymbolicFamily::union(children.iter().map(|c| c.ranked_part()).collect())
            }
            Disjoint(pieces) => SymbolicFamily::disjoint_unchecked(
                pieces.iter().map(|p| p.ranked_part()).collect(),
            ),
            Guard(g, child) => SymbolicFamily::guard(g.clone(), child.ranked_part()),
        }
    }

    /// The rank/degree spectrum shape of the family.
    pub fn spectrum_rd(&self) -> SpectrumRd {
        let shape = match self.rank_degree() {
            RankDegree::Empty => SpectrumShape::Empty,
            RankDegree::Ranked { rank, degree } => SpectrumShape::Segment { rank, degree },
            RankDegree::Infinite => match self.ranked_part().rank_degree() {
                RankDegree::Empty => SpectrumShape::InfinityOnly,
                RankDegree::Ranked { rank, degree } => {
                    SpectrumShape::SegmentPlusInfinity { rank, degree }
                }
                RankDegree::Infinite => {
                    unreachable!("ranked part contains no full kernels")
                }
            },
        };
        SpectrumRd {
            shape,
            extended: false,
        }
    }

    /// Number of points isolated by a sentence within the family.
    pub fn isolated_count(&self) -> CardinalValue {
        match self {
            Empty | Full => CardinalValue::Finite(0),
            Fin(points) => CardinalValue::Finite(points.len() as u64),
            EMinimal { .. } => CardinalValue::Aleph0,
            Guard(_, child) => child.isolated_count(),
            OmegaSum(child) => child.isolated_count().omega_copies(),
            Union(children) => children
                .iter()
                .map(|c| c.isolated_count())
                .fold(CardinalValue::Finite(0), CardinalValue::plus),
            Disjoint(pieces) => {
                let mut total = CardinalValue::Finite(0);
                for (i, piece) in pieces.iter().enumerate() {
                    let contribution = match piece {
                        // An explicit point accumulated by a sibling is not
                        // isolated in the union.
                        Fin(points) => CardinalValue::Finite(
                            points
                                .iter()
                                .filter(|p| {
                                    !pieces
                                        .iter()
                                        .enumerate()
                                        .any(|(j, sib)| j != i && sib.is_accumulation_point(p))
                                })
                                .count() as u64,
                        ),
                        other => other.isolated_count(),
                    };
                    total = total.plus(contribution);
                }
                total
            }
            // Every branch tower has at least one isolated point.
            LimitTower { .. } => CardinalValue::Aleph0,
        }
    }

    /// The infinite cardinalities arising as `|F_phi|` for sentences `phi`.
    fn infinite_restriction_cards(&self) -> BTreeSet<InfiniteCard> {
        let mut out = BTreeSet::new();
        match self {
            Empty | Fin(_) => {}
            EMinimal { .. } | LimitTower { .. } => {
                out.insert(InfiniteCard::Aleph0);
            }
            Full => {
                out.insert(InfiniteCard::Continuum);
            }
            Guard(_, child) => out = child.infinite_restriction_cards(),
            OmegaSum(child) => {
                out = child.infinite_restriction_cards();
                match self.cardinality() {
                    CardinalValue::Aleph0 => {
                        out.insert(InfiniteCard::Aleph0);
                    }
                    CardinalValue::Continuum => {
                        out.insert(InfiniteCard::Continuum);
                    }
                    CardinalValue::Finite(_) => {}
                }
            }
            Union(children) | Disjoint(children) => {
                for c in children {
                    out.extend(c.infinite_restriction_cards());
                }
            }
        }
        out
    }

    /// The pt-spectrum: which cardinalities `|F_phi|` are realized. The
    /// finite part is determined by the isolated-point count (an initial
    /// segment `1..=n`, or all finite values when infinitely many points
    /// are isolated); the infinite part is the set of achievable infinite
    /// restriction cardinalities.
    pub fn pt_spectrum(&self) -> PtSpectrum {
        let finite_part = match self.isolated_count() {
            CardinalValue::Finite(n) => FinitePart::UpTo(n),
            _ => FinitePart::AllFinite,
        };
        PtSpectrum {
            finite_part,
            infinite_part: self.infinite_restriction_cards(),
        }
    }
}

/// Shape of a rank/degree spectrum: an initial segment `O[(rank, degree)]`,
/// the pure-infinity spectrum, or their union. `Empty` covers the empty
/// family, whose extended spectrum is `{-1}` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumShape {
    Empty,
    Segment { rank: Ordinal, degree: u64 },
    InfinityOnly,
    SegmentPlusInfinity { rank: Ordinal, degree: u64 },
}

/// A rank/degree spectrum; `extended` adds the -1 of the empty subfamily.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRd {
    pub shape: SpectrumShape,
    pub extended: bool,
}

impl SpectrumRd {
    pub fn extended(mut self) -> Self {
        self.extended = true;
        self
    }

    /// Whether `(rank, degree)` belongs to the spectrum.
    pub fn contains_pair(&self, rank: &RankValue, degree: Option<u64>) -> bool {
        match rank {
            RankValue::MinusOne => self.extended,
            RankValue::Infinity => matches!(
                self.shape,
                SpectrumShape::InfinityOnly | SpectrumShape::SegmentPlusInfinity { .. }
            ),
            RankValue::Ranked(r) => match &self.shape {
                SpectrumShape::Segment { rank, degree: top }
                | SpectrumShape::SegmentPlusInfinity { rank, degree: top } => {
                    r < rank || (r == rank && degree.is_some_and(|d| d >= 1 && d <= *top))
                }
                _ => false,
            },
        }
    }
}

impl fmt::Display for SpectrumRd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            SpectrumShape::Empty => {
                if self.extended {
                    write!(f, "{{-1}}")
                } else {
                    write!(f, "{{}}")
                }
            }
            SpectrumShape::Segment { rank, degree } => {
                write!(f, "O[({rank},{degree})]")?;
                if self.extended {
                    write!(f, " ∪ {{-1}}")?;
                }
                Ok(())
            }
            SpectrumShape::InfinityOnly => {
                if self.extended {
                    write!(f, "{{-1,∞}}")
                } else {
                    write!(f, "{{∞}}")
                }
            }
            SpectrumShape::SegmentPlusInfinity { rank, degree } => {
                write!(f, "O[({rank},{degree})] ∪ {{∞}}")?;
                if self.extended {
                    write!(f, " ∪ {{-1}}")?;
                }
                Ok(())
            }
        }
    }
}

/// An infinite cardinality realizable by a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfiniteCard {
    Aleph0,
    Continuum,
}

impl fmt::Display for InfiniteCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfiniteCard::Aleph0 => write!(f, "aleph0"),
            InfiniteCard::Continuum => write!(f, "continuum"),
        }
    }
}

/// Finite part of a pt-spectrum: the initial segment `1..=n`, or every
/// positive natural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinitePart {
    UpTo(u64),
    AllFinite,
}

/// The pt-spectrum of a symbolic family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtSpectrum {
    pub finite_part: FinitePart,
    pub infinite_part: BTreeSet<InfiniteCard>,
}

impl PtSpectrum {
    pub fn contains_finite(&self, k: u64) -> bool {
        k >= 1
            && match self.finite_part {
                FinitePart::UpTo(n) => k <= n,
                FinitePart::AllFinite => true,
            }
    }
}

impl fmt::Display for PtSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.finite_part {
            FinitePart::UpTo(0) => write!(f, "{{}}")?,
            FinitePart::UpTo(n) => write!(f, "{{1..{n}}}")?,
            FinitePart::AllFinite => write!(f, "{{1,2,...}}")?,
        }
        for card in &self.infinite_part {
            write!(f, " ∪ {{{card}}}")?;
        }
        Ok(())
    }
}
