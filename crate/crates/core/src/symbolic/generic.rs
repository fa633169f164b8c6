//! Generic sentences and theories, ranking sentences, isolation, least
//! generating sets, and separation of families.

use crate::logic::{self, Sentence};
use crate::ordinal::{RankDegree, RankValue};

use super::{CardinalValue, Guard, PointTheory, SymbolicError, SymbolicFamily};

use SymbolicFamily::*;

/// Search depth for cylinder-based isolation and separation witnesses.
const CYLINDER_SEARCH_DEPTH: u32 = 64;
const PAIR_WALK_BUDGET: usize = 100_000;

/// The generic theories of a family: the points of maximal
/// Cantor-Bendixson rank in the closure, or the continuum kernel when the
/// family is not totally transcendental.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericTheories {
    Points(Vec<PointTheory>),
    ContinuumKernel,
}

/// The least generating set of an E-closed family: its isolated points,
/// returned as a family (every member of which is isolated by a sentence),
/// plus a rendering hint for infinite pattern pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub family: SymbolicFamily,
    pub finite: Option<Vec<PointTheory>>,
}

impl SymbolicFamily {
    /// A sentence is generic when its neighborhood has the full rank of
    /// the family, and the full degree when the rank is an ordinal.
    pub fn is_generic_sentence(&self, phi: &Sentence) -> Result<bool, SymbolicError> {
        let whole = self.rank_degree();
        let part = self.restrict(phi)?.rank_degree();
        Ok(match whole {
            RankDegree::Infinite => matches!(part, RankDegree::Infinite),
            _ => part == whole,
        })
    }

    /// The sentence isolates exactly one theory.
    pub fn is_p_complete(&self, phi: &Sentence) -> Result<bool, SymbolicError> {
        Ok(self.restrict(phi)?.cardinality() == CardinalValue::Finite(1))
    }

    /// Points of maximal Cantor-Bendixson rank in the closure; for a
    /// totally transcendental family these are exactly `ds` many, and for
    /// the rest the continuum kernel.
    pub fn generic_theories(&self) -> GenericTheories {
        match self.rank_degree() {
            RankDegree::Empty => GenericTheories::Points(Vec::new()),
            RankDegree::Infinite => GenericTheories::ContinuumKernel,
            RankDegree::Ranked { .. } => {
                let mut points = Vec::new();
                self.collect_generic(&Guard::new(), &mut points);
                GenericTheories::Points(points)
            }
        }
    }

    fn collect_generic(&self, ctx: &Guard, out: &mut Vec<PointTheory>) {
        match self {
            Empty | Full => {}
            Fin(points) => out.extend(points.iter().map(|p| p.embed(ctx))),
            EMinimal { .. } | OmegaSum(_) | LimitTower { .. } => {
                out.push(PointTheory::all(false).embed(ctx));
            }
            Guard(g, child) => child.collect_generic(&ctx.compose(g), out),
            Union(children) => {
                let top = self.rank_degree().rank();
                let k = children.len() as u32;
                for (j, c) in children.iter().enumerate() {
                    if c.rank_degree().rank() == top {
                        let g = if (j as u32) < k - 1 {
                            Guard::one_hot_prefix(j as u32)
                        } else {
                            Guard::zeros(k - 1)
                        };
                        c.collect_generic(&ctx.compose(&g), out);
                    }
                }
            }
            Disjoint(pieces) => {
                let top = self.rank_degree().rank();
                for piece in pieces {
                    if piece.rank_degree().rank() == top {
                        piece.collect_generic(ctx, out);
                    }
                }
            }
        }
    }

    /// Number of generic theories.
    pub fn count_generic(&self) -> CardinalValue {
        match self.rank_degree() {
            RankDegree::Empty => CardinalValue::Finite(0),
            RankDegree::Ranked { degree, .. } => CardinalValue::Finite(degree),
            RankDegree::Infinite => CardinalValue::Continuum,
        }
    }

    /// A sentence whose neighborhood has the requested rank, when one
    /// exists. Candidates are found by descending guards toward ranked
    /// material and verified against the whole family.
    pub fn ranking_sentence(&self, target: &RankValue) -> Result<Option<Sentence>, SymbolicError> {
        if *target == RankValue::MinusOne {
            return Ok(Some(Sentence::False));
        }
        let own = self.rank_degree().rank();
        if *target > own {
            return Ok(None);
        }
        for candidate in self.ranking_candidates(target) {
            if self.restrict(&candidate)?.rank_degree().rank() == *target {
                return Ok(Some(candidate));
            }
        }
        Ok(None)
    }

    fn ranking_candidates(&self, target: &RankValue) -> Vec<Sentence> {
        let mut out = Vec::new();
        if self.rank_degree().rank() == *target {
            out.push(Sentence::True);
        }
        match self {
            Empty | Full | Fin(_) => {}
            EMinimal { offset, .. } => {
                if *target == RankValue::ranked_nat(0) {
                    out.push(logic::atom(*offset));
                }
            }
            Guard(g, child) => {
                for inner in child.ranking_candidates(target) {
                    out.push(wrap_guard(g, &inner));
                }
            }
            OmegaSum(child) => {
                let g = Guard::one_hot_prefix(0);
                for inner in child.ranking_candidates(target) {
                    out.push(wrap_guard(&g, &inner));
                }
            }
            LimitTower { .. } => {
                // Branch ranks approach the limit from below: find a branch
                // at or above the target and descend into it.
                if let RankValue::Ranked(want) = target {
                    for i in 0..CYLINDER_SEARCH_DEPTH as u64 {
                        let branch = self.limit_tower_branch(i);
                        let rank = branch.rank_degree().rank();
                        if rank >= RankValue::Ranked(want.clone()) {
                            let g = Guard::one_hot_prefix(i as u32);
                            for inner in branch.ranking_candidates(target) {
                                out.push(wrap_guard(&g, &inner));
                            }
                            break;
                        }
                    }
                }
            }
            Union(children) => {
                let k = children.len() as u32;
                for (j, c) in children.iter().enumerate() {
                    if c.rank_degree().rank() >= *target {
                        let g = if (j as u32) < k - 1 {
                            Guard::one_hot_prefix(j as u32)
                        } else {
                            Guard::zeros(k - 1)
                        };
                        for inner in c.ranking_candidates(target) {
                            out.push(wrap_guard(&g, &inner));
                        }
                    }
                }
            }
            Disjoint(pieces) => {
                for piece in pieces {
                    if piece.rank_degree().rank() >= *target {
                        out.extend(piece.ranking_candidates(target));
                    }
                    // An explicit isolated point realizes rank 0 even when
                    // the raw piece candidate is drowned by a sibling.
                    if *target == RankValue::ranked_nat(0) {
                        if let Fin(points) = piece {
                            if let Some(p) = points.iter().next() {
                                if let Ok(phi) = self.isolating_sentence(p) {
                                    out.push(phi);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// A sentence isolating `p` within the family, found by extending the
    /// agreement cylinder around `p` until exactly one member remains.
    pub fn isolating_sentence(&self, p: &PointTheory) -> Result<Sentence, SymbolicError> {
        for depth in 0..=CYLINDER_SEARCH_DEPTH {
            let projected = self.project_prefix(p, depth);
            if projected.cardinality() == CardinalValue::Finite(1) {
                let cylinder = Guard::from_pairs((0..depth).map(|a| (a, p.value(a))));
                return Ok(cylinder.sentence());
            }
            if projected.cardinality() == CardinalValue::Finite(0) {
                break;
            }
        }
        Err(SymbolicError::NotIsolated(p.clone(), CYLINDER_SEARCH_DEPTH))
    }

    /// The family of points isolated by some sentence.
    pub fn isolated_family(&self) -> SymbolicFamily {
        match self {
            Empty | Fin(_) | EMinimal { .. } => self.clone(),
            Full => Empty,
            Guard(g, child) => SymbolicFamily::guard(g.clone(), child.isolated_family()),
            OmegaSum(child) => SymbolicFamily::omega_sum(child.isolated_family()),
            LimitTower { limit, skip, .. } => LimitTower {
                limit: limit.clone(),
                skip: *skip,
                closed: false,
            },
            Union(children) => {
                SymbolicFamily::union(children.iter().map(|c| c.isolated_family()).collect())
            }
            Disjoint(pieces) => {
                let filtered = pieces
                    .iter()
                    .enumerate()
                    .map(|(i, piece)| match piece {
                        Fin(points) => SymbolicFamily::fin(points.iter().cloned().filter(|p| {
                            !pieces
                                .iter()
                                .enumerate()
                                .any(|(j, sib)| j != i && sib.is_accumulation_point(p))
                        })),
                        other => other.isolated_family(),
                    })
                    .collect();
                SymbolicFamily::disjoint_unchecked(filtered)
            }
        }
    }

    /// The least generating set of an E-closed family: exists iff the
    /// family is totally transcendental (a full kernel has no isolated
    /// points and cannot be regenerated), and is then the isolated points.
    pub fn least_generating_set(&self) -> Result<Option<GeneratorSet>, SymbolicError> {
        if !self.is_e_closed() {
            return Err(SymbolicError::NotEClosed);
        }
        match self.rank_degree() {
            RankDegree::Infinite => Ok(None),
            RankDegree::Empty => Ok(Some(GeneratorSet {
                family: Empty,
                finite: Some(Vec::new()),
            })),
            RankDegree::Ranked { .. } => {
                let family = self.isolated_family();
                let finite = family.enumerate_points();
                Ok(Some(GeneratorSet { family, finite }))
            }
        }
    }

    /// A sentence holding on all of `self` and none of `other`, when their
    /// E-closures are disjoint; `None` exactly when they intersect.
    pub fn separating_sentence(
        &self,
        other: &SymbolicFamily,
    ) -> Result<Option<Sentence>, SymbolicError> {
        if closures_intersect(self, other)? {
            return Ok(None);
        }
        // Prefix enumeration is exponential in depth; disjoint closures
        // separate shallowly for the family shapes this tool builds.
        const SEPARATION_DEPTH: u32 = 16;
        for depth in 0..=SEPARATION_DEPTH {
            let ours = prefix_cylinders(self, depth);
            let theirs = prefix_cylinders(other, depth);
            if ours.iter().all(|c| !theirs.contains(c)) {
                let phi = ours
                    .into_iter()
                    .map(|cyl| {
                        Guard::from_pairs(cyl.iter().enumerate().map(|(a, &v)| (a as u32, v)))
                            .sentence()
                    })
                    .reduce(logic::or)
                    .unwrap_or(Sentence::False);
                return Ok(Some(phi));
            }
        }
        Err(SymbolicError::NonStabilizing(SEPARATION_DEPTH as usize))
    }

    /// For an infinite family, shrinks a generic neighborhood strictly
    /// while keeping it generic; no minimal generic restriction exists.
    pub fn strictly_smaller_generic(
        &self,
        phi: &Sentence,
    ) -> Result<Option<Sentence>, SymbolicError> {
        let restricted = self.restrict(phi)?;
        if !restricted.cardinality().is_infinite() {
            return Ok(None);
        }
        // Remove one small cylinder containing a member; the removed piece
        // carries strictly less rank material than the whole.
        let member = restricted.any_member().expect("infinite family has members");
        for depth in 1..=CYLINDER_SEARCH_DEPTH {
            let cylinder = Guard::from_pairs((0..depth).map(|a| (a, member.value(a))));
            let smaller = logic::and(phi.clone(), logic::not(cylinder.sentence()));
            if self.is_generic_sentence(&smaller)?
                && !self.restrict(&smaller)?.contains(&member)
            {
                return Ok(Some(smaller));
            }
        }
        Ok(None)
    }
}

fn wrap_guard(guard: &Guard, inner: &Sentence) -> Sentence {
    let renamed = guard.embed_sentence(inner);
    match renamed {
        Sentence::True => guard.sentence(),
        _ => logic::and(guard.sentence(), renamed),
    }
}

/// The depth-`d` prefix cylinders with nonempty content; these coincide
/// for a family and its closure.
fn prefix_cylinders(family: &SymbolicFamily, depth: u32) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let mut stack = vec![(family.clone(), Vec::new())];
    while let Some((fam, prefix)) = stack.pop() {
        if fam.is_empty_family() {
            continue;
        }
        if prefix.len() as u32 == depth {
            out.push(prefix);
            continue;
        }
        for value in [false, true] {
            let mut next = prefix.clone();
            next.push(value);
            stack.push((fam.project_first_atom(value), next));
        }
    }
    out
}

/// Whether the E-closures of two families intersect: there is an infinite
/// projection path along which both stay nonempty, or a common explicit
/// point once both sides are finite.
pub fn closures_intersect(
    a: &SymbolicFamily,
    b: &SymbolicFamily,
) -> Result<bool, SymbolicError> {
    use std::collections::BTreeMap;

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        InProgress,
        Done(bool),
    }

    fn go(
        a: &SymbolicFamily,
        b: &SymbolicFamily,
        memo: &mut BTreeMap<(SymbolicFamily, SymbolicFamily), State>,
        budget: &mut usize,
    ) -> Result<bool, SymbolicError> {
        if a.is_empty_family() || b.is_empty_family() {
            return Ok(false);
        }
        if let (CardinalValue::Finite(_), CardinalValue::Finite(_)) =
            (a.cardinality(), b.cardinality())
        {
            let pa = a.enumerate_points().unwrap();
            let pb = b.enumerate_points().unwrap();
            return Ok(pa.iter().any(|p| pb.contains(p)));
        }
        // Tower skips are erased in the memo key only: a collision across
        // different skips can only happen along a path where both sides
        // stay alive forever, which is a positive answer either way.
        let key = (
            super::closure::erase_tower_skips(a),
            super::closure::erase_tower_skips(b),
        );
        match memo.get(&key) {
            // Revisiting a pair on the current path: an infinite path on
            // which both families stay alive, hence a common limit point.
            Some(State::InProgress) => return Ok(true),
            Some(State::Done(result)) => return Ok(*result),
            None => {}
        }
        if *budget == 0 {
            return Err(SymbolicError::NonStabilizing(PAIR_WALK_BUDGET));
        }
        *budget -= 1;
        memo.insert(key.clone(), State::InProgress);
        let mut result = false;
        for value in [false, true] {
            if go(
                &a.project_first_atom(value),
                &b.project_first_atom(value),
                memo,
                budget,
            )? {
                result = true;
                break;
            }
        }
        memo.insert(key, State::Done(result));
        Ok(result)
    }

    let mut memo = BTreeMap::new();
    let mut budget = PAIR_WALK_BUDGET;
    go(a, b, &mut memo, &mut budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_sentence;

    fn s(text: &str) -> Sentence {
        parse_sentence(text).unwrap()
    }

    fn em() -> SymbolicFamily {
        SymbolicFamily::eminimal()
    }

    fn all0() -> PointTheory {
        PointTheory::all(false)
    }

    #[test]
    fn total_satisfaction_implies_generic() {
        for fam in [em(), Full, SymbolicFamily::fin([all0()])] {
            assert!(fam.is_generic_sentence(&s("true")).unwrap());
        }
    }

    #[test]
    fn cofinite_restrictions_of_eminimal_are_generic() {
        assert!(em().is_generic_sentence(&s("!Q0")).unwrap());
        assert!(!em().is_generic_sentence(&s("Q0")).unwrap());
    }

    #[test]
    fn generic_theories_of_closed_eminimal() {
        let closed = em().closure().0;
        assert_eq!(
            closed.generic_theories(),
            GenericTheories::Points(vec![all0()])
        );
        assert_eq!(closed.count_generic(), CardinalValue::Finite(1));
        assert_eq!(Full.generic_theories(), GenericTheories::ContinuumKernel);
        assert_eq!(Full.count_generic(), CardinalValue::Continuum);
    }

    #[test]
    fn p_complete_detects_isolation() {
        assert!(em().is_p_complete(&s("Q0")).unwrap());
        assert!(!SymbolicFamily::fin([all0(), PointTheory::one_hot(0)])
            .is_p_complete(&s("true"))
            .unwrap());
    }

    #[test]
    fn ranking_sentences_descend_towers() {
        let t2 = crate::symbolic::build_tower(&"2".parse().unwrap(), 1).unwrap();
        let phi = t2
            .ranking_sentence(&RankValue::ranked_nat(1))
            .unwrap()
            .expect("rank 1 is realizable in a rank-2 tower");
        assert_eq!(
            t2.restrict(&phi).unwrap().rank_degree().rank(),
            RankValue::ranked_nat(1)
        );

        assert_eq!(
            t2.ranking_sentence(&RankValue::MinusOne).unwrap(),
            Some(Sentence::False)
        );
        let fin3 = crate::symbolic::build_tower(&"0".parse().unwrap(), 3).unwrap();
        assert_eq!(
            fin3.ranking_sentence(&RankValue::ranked_nat(1)).unwrap(),
            None
        );
    }

    #[test]
    fn isolating_sentences_verify() {
        let closed = em().closure().0;
        let phi = closed.isolating_sentence(&PointTheory::one_hot(2)).unwrap();
        assert!(closed.is_p_complete(&phi).unwrap());
        assert!(closed.isolating_sentence(&all0()).is_err());
    }

    #[test]
    fn least_generating_sets() {
        let closed = em().closure().0;
        let gens = closed.least_generating_set().unwrap().unwrap();
        assert_eq!(gens.family, em());
        assert_eq!(gens.finite, None);

        assert_eq!(Full.least_generating_set().unwrap(), None);

        let fin = SymbolicFamily::fin([all0(), PointTheory::one_hot(1)]);
        let gens = fin.least_generating_set().unwrap().unwrap();
        assert_eq!(gens.finite.unwrap().len(), 2);

        assert_eq!(
            em().least_generating_set(),
            Err(SymbolicError::NotEClosed)
        );
    }

    #[test]
    fn separation_by_cylinders() {
        let left = SymbolicFamily::guard(Guard::from_pairs([(0, true)]), em());
        let right = SymbolicFamily::guard(Guard::from_pairs([(0, false)]), em());
        let phi = left.separating_sentence(&right).unwrap().unwrap();
        assert!(left.rhd_tt(&phi).unwrap());
        assert!(right.rhd_tt(&logic::not(phi)).unwrap());
    }

    #[test]
    fn shared_limit_point_blocks_separation() {
        let evens = SymbolicFamily::eminimal_spaced(2, 0);
        let odds = SymbolicFamily::eminimal_spaced(2, 1);
        assert!(closures_intersect(&evens, &odds).unwrap());
        assert_eq!(evens.separating_sentence(&odds).unwrap(), None);
        // Both closures contain the all-false point.
        assert!(evens.closure_contains(&all0()));
        assert!(odds.closure_contains(&all0()));
    }

    #[test]
    fn no_minimal_generic_restriction_on_infinite_families() {
        let smaller = em().strictly_smaller_generic(&s("true")).unwrap().unwrap();
        assert!(em().is_generic_sentence(&smaller).unwrap());
        let fin = SymbolicFamily::fin([all0()]);
        assert_eq!(fin.strictly_smaller_generic(&s("true")).unwrap(), None);
    }
}
