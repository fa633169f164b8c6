//! E-closure, accumulation points, and Cantor-Bendixson ranks of points.
//!
//! A theory is an accumulation point of a family when every sentence it
//! contains holds in infinitely many members; prefix cylinders form a
//! neighborhood base, so the test walks single-atom projections along the
//! point. Closure adds, per node, the all-default limit of each e-minimal
//! and omega-indexed node, recursively; additions are deduplicated against
//! explicit points by the `Disjoint` normalization.

use std::collections::BTreeSet;

use crate::ordinal::RankValue;

use super::{normalize, Guard, PointTheory, SymbolicError, SymbolicFamily};

use SymbolicFamily::*;

const ACC_WALK_BUDGET: usize = 100_000;

impl SymbolicFamily {
    /// Whether `p` is an accumulation point: every prefix cylinder around
    /// `p` contains infinitely many members.
    pub fn is_accumulation_point(&self, p: &PointTheory) -> bool {
        let mut seen: BTreeSet<(SymbolicFamily, PointTheory)> = BTreeSet::new();
        let mut family = self.clone();
        let mut point = p.clone();
        for _ in 0..ACC_WALK_BUDGET {
            if !family.cardinality().is_infinite() {
                return false;
            }
            if !seen.insert((erase_tower_skips(&family), point.clone())) {
                // A cycle of infinite-cardinality states: the cylinder
                // content stays infinite forever.
                return true;
            }
            family = family.project_first_atom(point.value(0));
            point = point.drop_atoms_below(1);
        }
        panic!("accumulation-point walk did not stabilize");
    }

    /// Membership in the E-closure: a member, or an accumulation point.
    pub fn closure_contains(&self, p: &PointTheory) -> bool {
        self.contains(p) || self.is_accumulation_point(p)
    }

    /// The E-closure, with limit points materialized as explicit additions
    /// merged by direct union. Idempotent up to normalization.
    pub fn closure(&self) -> (SymbolicFamily, bool) {
        let closed = self.closure_inner();
        let changed = &closed != self;
        (closed, changed)
    }

    fn closure_inner(&self) -> SymbolicFamily {
        match self {
            Empty | Fin(_) | Full => self.clone(),
            EMinimal { .. } => SymbolicFamily::disjoint_unchecked(vec![
                self.clone(),
                SymbolicFamily::fin([PointTheory::all(false)]),
            ]),
            OmegaSum(child) => SymbolicFamily::disjoint_unchecked(vec![
                SymbolicFamily::omega_sum(child.closure_inner()),
                SymbolicFamily::fin([PointTheory::all(false)]),
            ]),
            LimitTower { limit, skip, .. } => SymbolicFamily::disjoint_unchecked(vec![
                LimitTower {
                    limit: limit.clone(),
                    skip: *skip,
                    closed: true,
                },
                SymbolicFamily::fin([PointTheory::all(false)]),
            ]),
            Union(children) => normalize(Union(
                children.iter().map(|c| c.closure_inner()).collect(),
            )),
            Guard(g, child) => SymbolicFamily::guard(g.clone(), child.closure_inner()),
            Disjoint(pieces) => SymbolicFamily::disjoint_unchecked(
                pieces.iter().map(|p| p.closure_inner()).collect(),
            ),
        }
    }

    /// Closed iff the closure adds nothing.
    pub fn is_e_closed(&self) -> bool {
        !self.closure().1
    }

    /// Cantor-Bendixson rank of a point within the closure of the family.
    pub fn cb_rank(&self, p: &PointTheory) -> Result<RankValue, SymbolicError> {
        self.cb_rank_opt(p)
            .ok_or_else(|| SymbolicError::PointNotInClosure(p.clone()))
    }

    fn cb_rank_opt(&self, p: &PointTheory) -> Option<RankValue> {
        match self {
            Empty => None,
            Full => Some(RankValue::Infinity),
            Fin(points) => points.contains(p).then(|| RankValue::ranked_nat(0)),
            EMinimal { .. } => {
                if self.contains(p) {
                    Some(RankValue::ranked_nat(0))
                } else if p.is_all(false) {
                    Some(RankValue::ranked_nat(1))
                } else {
                    None
                }
            }
            Guard(g, child) => {
                if p.matches(g) {
                    child.cb_rank_opt(&p.project(g))
                } else {
                    None
                }
            }
            OmegaSum(child) => {
                if p.is_all(false) {
                    // The branches die after the child's full derivative
                    // height, which is its rank.
                    match child.rank_degree().rank() {
                        RankValue::Ranked(beta) => Some(RankValue::Ranked(beta.succ())),
                        RankValue::Infinity => Some(RankValue::Infinity),
                        RankValue::MinusOne => None,
                    }
                } else {
                    let i = p.first_true()?;
                    child.cb_rank_opt(&p.drop_atoms_below(i + 1))
                }
            }
            LimitTower { limit, .. } => {
                if p.is_all(false) {
                    Some(RankValue::Ranked(limit.clone()))
                } else {
                    let i = p.first_true()?;
                    self.limit_tower_branch(i as u64)
                        .cb_rank_opt(&p.drop_atoms_below(i + 1))
                }
            }
            Union(children) => {
                let k = children.len() as u32;
                match p.first_true() {
                    Some(i) if i < k - 1 => {
                        children[i as usize].cb_rank_opt(&p.drop_atoms_below(i + 1))
                    }
                    _ => children[k as usize - 1].cb_rank_opt(&p.drop_atoms_below(k - 1)),
                }
            }
            // CB rank in a finite union is the maximum over the pieces
            // whose closure contains the point.
            Disjoint(pieces) => pieces.iter().filter_map(|f| f.cb_rank_opt(p)).max(),
        }
    }

    /// Describes the accumulation points: a continuum kernel when a full
    /// cylinder is present, sample limit points otherwise, with a flag
    /// when omega-indexed nodes repeat the pattern branch by branch.
    pub fn accumulation_points(&self) -> AccumulationReport {
        let mut report = AccumulationReport {
            continuum_kernel: false,
            points: BTreeSet::new(),
            repeats_in_branches: false,
        };
        self.collect_acc(&Guard::new(), &mut report, 0);
        report
    }

    fn collect_acc(&self, ctx: &Guard, report: &mut AccumulationReport, depth: u32) {
        const SAMPLE_CAP: usize = 64;
        if report.points.len() >= SAMPLE_CAP {
            return;
        }
        match self {
            Empty | Fin(_) => {}
            Full => report.continuum_kernel = true,
            EMinimal { .. } => {
                report.points.insert(PointTheory::all(false).embed(ctx));
            }
            OmegaSum(child) => {
                report.points.insert(PointTheory::all(false).embed(ctx));
                let sub_ctx = ctx.compose(&Guard::one_hot_prefix(0));
                let before = report.points.len();
                child.collect_acc(&sub_ctx, report, depth + 1);
                if report.points.len() > before || report.continuum_kernel {
                    report.repeats_in_branches = true;
                }
            }
            LimitTower { .. } => {
                report.points.insert(PointTheory::all(false).embed(ctx));
                let sub_ctx = ctx.compose(&Guard::one_hot_prefix(0));
                let before = report.points.len();
                self.limit_tower_branch(0)
                    .collect_acc(&sub_ctx, report, depth + 1);
                if report.points.len() > before {
                    report.repeats_in_branches = true;
                }
            }
            Union(children) => {
                let k = children.len() as u32;
                for (j, c) in children.iter().enumerate() {
                    let g = if (j as u32) < k - 1 {
                        Guard::one_hot_prefix(j as u32)
                    } else {
                        Guard::zeros(k - 1)
                    };
                    c.collect_acc(&ctx.compose(&g), report, depth);
                }
            }
            Guard(g, child) => child.collect_acc(&ctx.compose(g), report, depth),
            Disjoint(pieces) => {
                for piece in pieces {
                    piece.collect_acc(ctx, report, depth);
                }
            }
        }
    }
}

pub(crate) fn erase_tower_skips(f: &SymbolicFamily) -> SymbolicFamily {
    match f {
        LimitTower { limit, closed, .. } => LimitTower {
            limit: limit.clone(),
            skip: 0,
            closed: *closed,
        },
        OmegaSum(c) => OmegaSum(Box::new(erase_tower_skips(c))),
        Union(cs) => Union(cs.iter().map(erase_tower_skips).collect()),
        Disjoint(ps) => Disjoint(ps.iter().map(erase_tower_skips).collect()),
        Guard(g, c) => Guard(g.clone(), Box::new(erase_tower_skips(c))),
        other => other.clone(),
    }
}

/// Summary of the accumulation points of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccumulationReport {
    /// A full cylinder is present: continuum many accumulation points.
    pub continuum_kernel: bool,
    /// Sample accumulation points in global coordinates (all of them, when
    /// finite and no branch repetition).
    pub points: BTreeSet<PointTheory>,
    /// Omega-indexed nodes repeat the sampled pattern in every branch.
    pub repeats_in_branches: bool,
}

impl AccumulationReport {
    pub fn is_empty(&self) -> bool {
        !self.continuum_kernel && self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::RankDegree;

    fn em() -> SymbolicFamily {
        SymbolicFamily::eminimal()
    }

    fn all0() -> PointTheory {
        PointTheory::all(false)
    }

    #[test]
    fn all_false_accumulates_eminimal() {
        assert!(em().is_accumulation_point(&all0()));
        assert!(!em().is_accumulation_point(&PointTheory::one_hot(0)));
        assert!(!em().is_accumulation_point(&PointTheory::all(true)));
        let fin = SymbolicFamily::fin([PointTheory::one_hot(0)]);
        assert!(!fin.is_accumulation_point(&all0()));
    }

    #[test]
    fn one_hots_accumulate_the_double_tower() {
        let t2 = SymbolicFamily::omega_sum(em());
        assert!(t2.is_accumulation_point(&PointTheory::one_hot(3)));
        assert!(t2.is_accumulation_point(&all0()));
        assert!(!t2.is_accumulation_point(&PointTheory::from_flips(false, [0, 1])));
    }

    #[test]
    fn closure_of_eminimal_adds_the_limit_and_closes() {
        let (closed, changed) = em().closure();
        assert!(changed);
        assert!(closed.contains(&all0()));
        assert!(closed.contains(&PointTheory::one_hot(5)));
        assert!(closed.is_e_closed());
        assert_eq!(closed.rank_degree(), RankDegree::ranked_nat(1, 1));
        assert_eq!(closed.closure().0, closed);
    }

    #[test]
    fn finite_and_full_families_are_closed() {
        assert!(SymbolicFamily::fin([all0()]).is_e_closed());
        assert!(Full.is_e_closed());
        assert!(Empty.is_e_closed());
        assert!(!em().is_e_closed());
    }

    #[test]
    fn cb_ranks_in_closed_eminimal() {
        let fam = em();
        assert_eq!(
            fam.cb_rank(&PointTheory::one_hot(2)).unwrap(),
            RankValue::ranked_nat(0)
        );
        assert_eq!(fam.cb_rank(&all0()).unwrap(), RankValue::ranked_nat(1));
        assert!(matches!(
            fam.cb_rank(&PointTheory::all(true)),
            Err(SymbolicError::PointNotInClosure(_))
        ));
    }

    #[test]
    fn cb_rank_climbs_with_omega_sums() {
        let t2 = SymbolicFamily::omega_sum(em());
        assert_eq!(t2.cb_rank(&all0()).unwrap(), RankValue::ranked_nat(2));
        // A branch's interior limit point: one-hot at the branch guard.
        assert_eq!(
            t2.cb_rank(&PointTheory::one_hot(1)).unwrap(),
            RankValue::ranked_nat(1)
        );
        assert_eq!(
            t2.cb_rank(&PointTheory::from_flips(false, [1, 4])).unwrap(),
            RankValue::ranked_nat(0)
        );
        assert_eq!(Full.cb_rank(&all0()).unwrap(), RankValue::Infinity);
    }

    #[test]
    fn closure_distributes_into_guards_and_unions() {
        let fam = SymbolicFamily::union(vec![
            SymbolicFamily::fin([all0()]),
            em(),
        ]);
        let (closed, changed) = fam.closure();
        assert!(changed);
        // The e-minimal child sits under the last guard (one leading zero).
        let limit_in_branch = all0();
        assert!(closed.contains(&limit_in_branch));
        assert!(closed.is_e_closed());
    }

    #[test]
    fn accumulation_reports() {
        let r = em().accumulation_points();
        assert!(!r.continuum_kernel);
        assert_eq!(r.points, BTreeSet::from([all0()]));
        assert!(!r.repeats_in_branches);

        let r = Full.accumulation_points();
        assert!(r.continuum_kernel);

        let r = SymbolicFamily::fin([all0()]).accumulation_points();
        assert!(r.is_empty());

        let r = SymbolicFamily::omega_sum(em()).accumulation_points();
        assert!(r.repeats_in_branches);
        assert!(r.points.contains(&all0()));
        assert!(r.points.contains(&PointTheory::one_hot(0)));
    }
}
