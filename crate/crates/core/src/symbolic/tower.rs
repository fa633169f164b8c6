//! Constructions realizing any prescribed rank and degree.
//!
//! A degree-1 tower of rank 0 is a single point; rank `b+1` wraps the
//! rank-`b` tower in an `OmegaSum`; a limit rank is an omega-indexed sum
//! whose branch `i` carries the degree-1 tower of the `i`-th entry of the
//! canonical fundamental sequence. Degree `n` takes the prefix-guarded
//! union of `n` degree-1 towers, whose ranks tie and whose degrees sum.

use crate::ordinal::Ordinal;

use super::{PointTheory, SymbolicError, SymbolicFamily};

/// The degree-1 tower of the given rank.
pub(crate) fn degree_one_tower(rank: &Ordinal) -> SymbolicFamily {
    if rank.is_zero() {
        SymbolicFamily::fin([PointTheory::all(false)])
    } else if let Some(pred) = rank.pred() {
        SymbolicFamily::omega_sum(degree_one_tower(&pred))
    } else {
        SymbolicFamily::LimitTower {
            limit: rank.clone(),
            skip: 0,
            closed: false,
        }
    }
}

/// Builds a family with rank exactly `rank` and degree exactly `degree`.
pub fn build_tower(rank: &Ordinal, degree: u64) -> Result<SymbolicFamily, SymbolicError> {
    if degree == 0 {
        return Err(SymbolicError::InvalidDegree);
    }
    if !fits(rank) {
        return Err(SymbolicError::OrdinalBoundExceeded);
    }
    if rank.is_zero() {
        let points = (0..degree).map(|i| {
            if degree == 1 {
                PointTheory::all(false)
            } else {
                PointTheory::one_hot(i as u32)
            }
        });
        return Ok(SymbolicFamily::fin(points));
    }
    if degree == 1 {
        return Ok(degree_one_tower(rank));
    }
    let copies = (0..degree).map(|_| degree_one_tower(rank)).collect();
    Ok(SymbolicFamily::union(copies))
}

// Pragmatic bound: the limit-branch recursion materializes towers of
// fundamental-sequence entries on demand, so keep ranks at or below w^w.
fn fits(rank: &Ordinal) -> bool {
    rank <= &Ordinal::omega_power(Ordinal::omega(), 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::RankDegree;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn rank_zero_towers_are_point_sets() {
        let t = build_tower(&ord("0"), 3).unwrap();
        assert_eq!(t.cardinality(), super::super::CardinalValue::Finite(3));
        assert_eq!(t.rank_degree(), RankDegree::ranked_nat(0, 3));
    }

    #[test]
    fn successor_towers_nest_omega_sums() {
        let t = build_tower(&ord("2"), 1).unwrap();
        assert_eq!(t.rank_degree(), RankDegree::ranked_nat(2, 1));
        let t = build_tower(&ord("1"), 2).unwrap();
        assert_eq!(t.rank_degree(), RankDegree::ranked_nat(1, 2));
    }

    #[test]
    fn limit_towers_carry_fundamental_branches() {
        let t = build_tower(&ord("w"), 1).unwrap();
        assert_eq!(t.rank_degree(), RankDegree::ranked(ord("w"), 1));
        match &t {
            SymbolicFamily::LimitTower { limit, skip, .. } => {
                assert_eq!(limit, &ord("w"));
                assert_eq!(*skip, 0);
            }
            other => panic!("expected a limit tower, got {other:?}"),
        }
        // Branch i of the w-tower has rank exactly i.
        for i in 0..4 {
            let branch = t.limit_tower_branch(i);
            assert_eq!(branch.rank_degree(), RankDegree::ranked_nat(i, 1));
        }
    }

    #[test]
    fn degree_zero_is_rejected() {
        assert_eq!(build_tower(&ord("1"), 0), Err(SymbolicError::InvalidDegree));
    }
}
