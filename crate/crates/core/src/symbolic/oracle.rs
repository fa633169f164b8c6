//! Independent re-evaluation of the rank definition.
//!
//! The rank definition says `RS >= b+1` when infinitely many pairwise
//! inconsistent sentences carve neighborhoods of rank at least `b`. A
//! sentence is a finite union of prefix cylinders and the rank of a union
//! is the maximum over its parts, so the witnesses can be taken to be
//! pairwise disjoint cylinders. This oracle therefore never touches the
//! structural rank recursion: it walks single-atom projections of the
//! family, quotients the (stabilizing) restriction classes into a finite
//! graph, and reads ranks off that graph:
//!
//! * infinitely many disjoint rank-`b` cylinders exist below a class
//!   exactly when the class reaches a cycle one of whose exits leads to a
//!   rank-`b` class (each traversal of the cycle spawns a fresh disjoint
//!   side subtree);
//! * classes whose marking never stops increasing are the rank-infinity
//!   kernels;
//! * the degree of a rank-`a` class counts disjoint rank-`a` material:
//!   cycle-confined material counts once (its cylinders are nested), and
//!   branching adds the children's counts.
//!
//! Cardinalities enter only through the finite/infinite split of each
//! class, as the base of the induction.

use std::collections::BTreeMap;

use crate::ordinal::RankValue;

use super::{CardinalValue, SymbolicError, SymbolicFamily};

/// Outcome of the definition-based computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleRank {
    pub rank: RankValue,
    /// Defined exactly when the rank is an ordinal (a natural number: a
    /// stabilizing family has rank below omega or infinity).
    pub degree: Option<u64>,
}

struct Quotient {
    /// Projection edges: `children[n] = [zero-child, one-child]`.
    children: Vec<[usize; 2]>,
    nonempty: Vec<bool>,
}

fn build_quotient(family: &SymbolicFamily, budget: usize) -> Result<(Quotient, usize), SymbolicError> {
    let mut index: BTreeMap<SymbolicFamily, usize> = BTreeMap::new();
    let mut families: Vec<SymbolicFamily> = Vec::new();
    let mut worklist: Vec<usize> = Vec::new();

    let intern = |fam: SymbolicFamily,
                      families: &mut Vec<SymbolicFamily>,
                      worklist: &mut Vec<usize>,
                      index: &mut BTreeMap<SymbolicFamily, usize>|
     -> usize {
        if let Some(&i) = index.get(&fam) {
            return i;
        }
        let i = families.len();
        index.insert(fam.clone(), i);
        families.push(fam);
        worklist.push(i);
        i
    };

    let root = intern(family.clone(), &mut families, &mut worklist, &mut index);
    let mut children: Vec<[usize; 2]> = Vec::new();
    while let Some(i) = worklist.pop() {
        if families.len() > budget {
            return Err(SymbolicError::NonStabilizing(budget));
        }
        let fam = families[i].clone();
        let zero = intern(
            fam.project_first_atom(false),
            &mut families,
            &mut worklist,
            &mut index,
        );
        let one = intern(
            fam.project_first_atom(true),
            &mut families,
            &mut worklist,
            &mut index,
        );
        while children.len() <= i {
            children.push([0, 0]);
        }
        children[i] = [zero, one];
    }
    while children.len() < families.len() {
        children.push([0, 0]);
    }

    let nonempty = families
        .iter()
        .map(|f| f.cardinality() != CardinalValue::Finite(0))
        .collect();
    Ok((
        Quotient {
            children,
            nonempty,
        },
        root,
    ))
}

impl Quotient {
    fn len(&self) -> usize {
        self.children.len()
    }

    /// reach[u][v]: a (possibly empty) projection path from u to v.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut reach = vec![vec![false; n]; n];
        for (u, row) in reach.iter_mut().enumerate() {
            row[u] = true;
        }
        // Floyd-Warshall style closure over the sparse edge set.
        let mut changed = true;
        while changed {
            changed = false;
            for u in 0..n {
                for c in self.children[u] {
                    for v in 0..n {
                        if reach[c][v] && !reach[u][v] {
                            reach[u][v] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        reach
    }

    /// One marking step: which classes have, below them, infinitely many
    /// pairwise disjoint cylinders whose class lies in `current`.
    fn step(&self, current: &[bool], reach: &[Vec<bool>]) -> Vec<bool> {
        let n = self.len();
        let reaches_current: Vec<bool> = (0..n)
            .map(|u| (0..n).any(|v| reach[u][v] && current[v]))
            .collect();
        let mut qualifying = vec![false; n];
        for v in 0..n {
            let [c0, c1] = self.children[v];
            let back0 = reach[c0][v];
            let back1 = reach[c1][v];
            // A cycle continues through one child while the other exit
            // reaches marked material; each traversal spawns a disjoint
            // side subtree.
            if (back0 && reaches_current[c1]) || (back1 && reaches_current[c0]) {
                qualifying[v] = true;
            }
        }
        (0..n)
            .map(|u| (0..n).any(|v| reach[u][v] && qualifying[v]))
            .collect()
    }
}

/// Evaluates the inductive rank definition on the finite quotient of
/// prefix-cylinder restrictions. Errors when the family's restriction
/// classes do not stabilize within the budget implied by `atom_bound`.
pub fn rank_by_definition_oracle(
    family: &SymbolicFamily,
    atom_bound: u32,
) -> Result<OracleRank, SymbolicError> {
    let budget = 256 * (atom_bound as usize + 1);
    let (quotient, root) = build_quotient(family, budget)?;
    let reach = quotient.reachability();

    // marks[b][u]: rank(u) >= b.
    let mut marks: Vec<Vec<bool>> = vec![quotient.nonempty.clone()];
    loop {
        let next = quotient.step(marks.last().unwrap(), &reach);
        if &next == marks.last().unwrap() {
            break;
        }
        marks.push(next);
        // The marking strictly shrinks until its fixpoint, so it stops
        // within one step per class.
        debug_assert!(marks.len() <= quotient.len() + 2);
    }

    let fixpoint = quotient.step(marks.last().unwrap(), &reach);
    let in_fixpoint = fixpoint[root] && marks.last().unwrap()[root];

    if !marks[0][root] {
        return Ok(OracleRank {
            rank: RankValue::MinusOne,
            degree: None,
        });
    }
    if in_fixpoint {
        return Ok(OracleRank {
            rank: RankValue::Infinity,
            degree: None,
        });
    }
    let rank = (0..marks.len()).rev().find(|&b| marks[b][root]).unwrap() as u64;

    // Degree: disjoint rank-`rank` material below the root. Classes on a
    // rank-level cycle count once; elsewhere children's counts add.
    let level: Vec<bool> = (0..quotient.len())
        .map(|u| {
            marks[rank as usize][u]
                && !(rank as usize + 1 < marks.len() && marks[rank as usize + 1][u])
                && !fixpoint[u]
        })
        .collect();
    let mut memo: Vec<Option<u64>> = vec![None; quotient.len()];
    let degree = count_disjoint(root, &quotient, &reach, &level, &mut memo);

    Ok(OracleRank {
        rank: RankValue::ranked_nat(rank),
        degree: Some(degree),
    })
}

fn count_disjoint(
    u: usize,
    quotient: &Quotient,
    reach: &[Vec<bool>],
    level: &[bool],
    memo: &mut Vec<Option<u64>>,
) -> u64 {
    if !level[u] {
        // Classes below the level rank contribute nothing; classes above
        // it never appear under a top-level query.
        return 0;
    }
    if let Some(d) = memo[u] {
        return d;
    }
    let [c0, c1] = quotient.children[u];
    // On a cycle of level-rank classes the cylinders are nested: one unit.
    let on_cycle = (level[c0] && reach[c0][u]) || (level[c1] && reach[c1][u]);
    let d = if on_cycle {
        1
    } else {
        memo[u] = Some(0); // cycle guard; overwritten below
        count_disjoint(c0, quotient, reach, level, memo)
            + count_disjoint(c1, quotient, reach, level, memo)
    };
    memo[u] = Some(d);
    d
}
