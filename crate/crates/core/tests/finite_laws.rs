//! Exhaustive checks of the satisfaction-relation laws on explicit finite
//! families: all families over two atoms crossed with all sixteen sentence
//! classes, so every law is decided with zero sampling.

use ranklab_core::finite::FiniteFamily;
use ranklab_core::logic::{self, enumerate_sentences, parse_sentence, Sentence};
use ranklab_core::ordinal::{RankDegree, RankValue};

fn all_families(atoms: u32) -> Vec<FiniteFamily> {
    let points = 1u32 << atoms;
    (0..1u32 << points)
        .map(|mask| {
            FiniteFamily::new(atoms, (0..points).filter(|&p| mask >> p & 1 == 1)).unwrap()
        })
        .collect()
}

fn classes(atoms: u32) -> Vec<Sentence> {
    enumerate_sentences(atoms, None).unwrap()
}

fn s(text: &str) -> Sentence {
    parse_sentence(text).unwrap()
}

#[test]
fn conjunction_partial_satisfaction_forward() {
    // (phi & psi) pt-satisfying the intersection forces each conjunct to
    // pt-satisfy its family.
    for p in all_families(2) {
        for q in all_families(2) {
            let meet = p.intersection(&q).unwrap();
            for phi in classes(2) {
                for psi in classes(2) {
                    let both = logic::and(phi.clone(), psi.clone());
                    if meet.rhd_pt(&both).unwrap() {
                        assert!(p.rhd_pt(&phi).unwrap());
                        assert!(q.rhd_pt(&psi).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn conjunction_partial_satisfaction_converse_fails() {
    // Two conjuncts can pt-satisfy the same family while their conjunction
    // does not.
    let family = FiniteFamily::new(2, [0b01, 0b00]).unwrap();
    let phi = s("Q0");
    let psi = s("!Q0");
    assert!(family.rhd_pt(&phi).unwrap());
    assert!(family.rhd_pt(&psi).unwrap());
    assert!(!family.rhd_pt(&logic::and(phi, psi)).unwrap());
}

#[test]
fn conjunction_total_satisfaction_is_componentwise() {
    for p in all_families(2) {
        for phi in classes(2) {
            for psi in classes(2) {
                let both = logic::and(phi.clone(), psi.clone());
                assert_eq!(
                    p.rhd_tt(&both).unwrap(),
                    p.rhd_tt(&phi).unwrap() && p.rhd_tt(&psi).unwrap()
                );
            }
        }
    }
}

#[test]
fn conjunction_total_satisfaction_into_intersections() {
    for p in all_families(2) {
        for q in all_families(2) {
            let meet = p.intersection(&q).unwrap();
            for phi in classes(2) {
                for psi in classes(2) {
                    if p.rhd_tt(&phi).unwrap() && q.rhd_tt(&psi).unwrap() {
                        assert!(meet.rhd_tt(&logic::and(phi.clone(), psi.clone())).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn conjunction_total_satisfaction_converse_fails() {
    // Vacuous total satisfaction over a disjoint intersection.
    let p = FiniteFamily::new(2, [0b00]).unwrap();
    let q = FiniteFamily::new(2, [0b11]).unwrap();
    let meet = p.intersection(&q).unwrap();
    assert!(meet.is_empty());
    let phi = s("false");
    let psi = s("false");
    assert!(meet.rhd_tt(&logic::and(phi.clone(), psi.clone())).unwrap());
    assert!(!p.rhd_tt(&phi).unwrap());
    assert!(!q.rhd_tt(&psi).unwrap());
}

#[test]
fn disjunction_partial_satisfaction_into_unions() {
    for p in all_families(2) {
        for q in all_families(2) {
            let join = p.union(&q).unwrap();
            for phi in classes(2) {
                for psi in classes(2) {
                    if p.rhd_pt(&phi).unwrap() || q.rhd_pt(&psi).unwrap() {
                        assert!(join.rhd_pt(&logic::or(phi.clone(), psi.clone())).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn disjunction_partial_satisfaction_converse_fails() {
    // A tautology carries the disjunction even when one disjunct fails.
    let family = FiniteFamily::all(2).unwrap();
    let phi = s("true");
    let psi = s("false");
    assert!(family
        .rhd_pt(&logic::or(phi.clone(), psi.clone()))
        .unwrap());
    assert!(!family.rhd_pt(&psi).unwrap());
}

#[test]
fn disjunction_partial_satisfaction_splits() {
    for p in all_families(2) {
        for phi in classes(2) {
            for psi in classes(2) {
                assert_eq!(
                    p.rhd_pt(&logic::or(phi.clone(), psi.clone())).unwrap(),
                    p.rhd_pt(&phi).unwrap() || p.rhd_pt(&psi).unwrap()
                );
            }
        }
    }
}

#[test]
fn disjunction_total_satisfaction_into_unions_with_witness() {
    for p in all_families(2) {
        for q in all_families(2) {
            let join = p.union(&q).unwrap();
            for phi in classes(2) {
                for psi in classes(2) {
                    if p.rhd_tt(&phi).unwrap() && q.rhd_tt(&psi).unwrap() {
                        assert!(join.rhd_tt(&logic::or(phi.clone(), psi.clone())).unwrap());
                    }
                }
            }
        }
    }

    // Converse failure: a split tautology is totally satisfied while
    // neither disjunct is.
    let family = FiniteFamily::all(1).unwrap();
    let phi = s("Q0");
    let psi = s("!Q0");
    assert!(family
        .rhd_tt(&logic::or(phi.clone(), psi.clone()))
        .unwrap());
    assert!(!family.rhd_tt(&phi).unwrap());
    assert!(!family.rhd_tt(&psi).unwrap());
}

#[test]
fn negation_swaps_partial_and_total_satisfaction() {
    for p in all_families(2) {
        for phi in classes(2) {
            let neg = logic::not(phi.clone());
            assert_eq!(p.rhd_pt(&phi).unwrap(), !p.rhd_tt(&neg).unwrap());
            assert_eq!(p.rhd_tt(&phi).unwrap(), !p.rhd_pt(&neg).unwrap());
        }
    }
}

#[test]
fn nabla_is_union_and_delta_is_intersection() {
    for p in all_families(2) {
        let dn = p.delta_nabla();
        for phi in classes(2) {
            let in_some = p.members().any(|m| {
                phi.eval_with(&|a: ranklab_core::logic::AtomId| m >> a.0 & 1 == 1)
            });
            let in_all = p.members().all(|m| {
                phi.eval_with(&|a: ranklab_core::logic::AtomId| m >> a.0 & 1 == 1)
            });
            assert_eq!(dn.in_nabla(&phi).unwrap(), in_some);
            assert_eq!(dn.in_delta(&phi).unwrap(), in_all);
        }
    }
}

#[test]
fn nabla_consistency_characterizes_small_families() {
    for p in all_families(2) {
        let dn = p.delta_nabla();
        let split = classes(2).into_iter().any(|phi| {
            dn.in_nabla(&phi).unwrap() && dn.in_nabla(&logic::not(phi)).unwrap()
        });
        // The union of the member theories is consistent iff at most one
        // member exists.
        assert_eq!(split, p.len() >= 2);

        if p.len() == 1 {
            for phi in classes(2) {
                assert_ne!(
                    dn.in_nabla(&phi).unwrap(),
                    dn.in_nabla(&logic::not(phi)).unwrap()
                );
            }
        }
    }
}

#[test]
fn delta_consistency_and_completeness() {
    for p in all_families(2) {
        let dn = p.delta_nabla();
        // Consistent theory iff nonempty: the empty family's delta holds
        // every sentence, including false.
        assert_eq!(dn.in_delta(&s("false")).unwrap(), p.is_empty());
        // Complete iff singleton.
        let complete = classes(2).into_iter().all(|phi| {
            dn.in_delta(&phi).unwrap() || dn.in_delta(&logic::not(phi)).unwrap()
        });
        assert_eq!(complete, p.len() == 1);
    }
}

#[test]
fn delta_contained_in_nabla_with_equality_iff_singleton() {
    for p in all_families(2) {
        if p.is_empty() {
            continue;
        }
        let dn = p.delta_nabla();
        let mut equal = true;
        for phi in classes(2) {
            if dn.in_delta(&phi).unwrap() {
                assert!(dn.in_nabla(&phi).unwrap());
            }
            if dn.in_delta(&phi).unwrap() != dn.in_nabla(&phi).unwrap() {
                equal = false;
            }
        }
        assert_eq!(equal, p.len() == 1);
    }
}

#[test]
fn splitting_sentence_exists_iff_two_points_in_the_union() {
    for p1 in all_families(2) {
        for p2 in all_families(2) {
            let exists = classes(2).into_iter().any(|phi| {
                p1.rhd_pt(&phi).unwrap() && p2.rhd_pt(&logic::not(phi)).unwrap()
            });
            let expected =
                !p1.is_empty() && !p2.is_empty() && p1.union(&p2).unwrap().len() >= 2;
            assert_eq!(exists, expected, "families {p1} and {p2}");
        }
    }
}

#[test]
fn delta_quotient_is_a_principal_filter() {
    for p in all_families(2) {
        if p.is_empty() {
            continue;
        }
        let dn = p.delta_nabla();
        let chi = dn.delta_formula().clone();
        for phi in classes(2) {
            // Principality: membership is entailment from the generator.
            assert_eq!(
                dn.in_delta(&phi).unwrap(),
                logic::entails(&chi, &phi).unwrap()
            );
            // Upward closure under entailment.
            if dn.in_delta(&phi).unwrap() {
                for psi in classes(2) {
                    if logic::entails(&phi, &psi).unwrap() {
                        assert!(dn.in_delta(&psi).unwrap());
                    }
                }
            }
        }
        // Closure under conjunction.
        for phi in classes(2) {
            for psi in classes(2) {
                if dn.in_delta(&phi).unwrap() && dn.in_delta(&psi).unwrap() {
                    assert!(dn.in_delta(&logic::and(phi.clone(), psi)).unwrap());
                }
            }
        }
        // Ultrafilter iff singleton.
        let ultra = classes(2).into_iter().all(|phi| {
            dn.in_delta(&phi).unwrap() != dn.in_delta(&logic::not(phi)).unwrap()
        });
        assert_eq!(ultra, p.len() == 1);
    }
}

#[test]
fn rank_connects_to_satisfaction() {
    for p in all_families(2) {
        for phi in classes(2) {
            let neg_rank = p.neighborhood(&logic::not(phi.clone())).unwrap().rank_degree();
            assert_eq!(p.rhd_tt(&phi).unwrap(), neg_rank == RankDegree::Empty);
            let pos_rank = p.neighborhood(&phi).unwrap().rank_degree().rank();
            assert_eq!(p.rhd_pt(&phi).unwrap(), pos_rank >= RankValue::ranked_nat(0));
        }
    }
}

#[test]
fn rank_zero_degree_splits_additively() {
    for p in all_families(2) {
        if p.is_empty() {
            continue;
        }
        for phi in classes(2) {
            let pos = p.neighborhood(&phi).unwrap().len();
            let neg = p.neighborhood(&logic::not(phi)).unwrap().len();
            assert_eq!(p.len(), pos + neg);
        }
    }
}

#[test]
fn finite_families_have_full_initial_segment_spectrum() {
    for p in all_families(3) {
        let realizable: std::collections::BTreeSet<usize> = classes(3)
            .into_iter()
            .map(|phi| p.neighborhood(&phi).unwrap().len())
            .filter(|&k| k > 0)
            .collect();
        assert_eq!(realizable, p.pt_spectrum(), "family {p}");
    }
}

#[test]
fn rank_zero_genericity_trichotomy() {
    // Either a sentence or its negation is generic, or the degree splits
    // into two positive parts.
    for p in all_families(2) {
        if p.is_empty() {
            continue;
        }
        let ds = p.len();
        for phi in classes(2) {
            let pos = p.neighborhood(&phi).unwrap().len();
            let neg = ds - pos;
            let phi_generic = p.is_generic(&phi).unwrap();
            let neg_generic = p.is_generic(&logic::not(phi.clone())).unwrap();
            assert!(
                phi_generic || neg_generic || (pos > 0 && neg > 0),
                "family {p}, sentence {phi}"
            );
        }
    }
}

#[test]
fn generic_equals_total_satisfaction_on_finite_families() {
    for p in all_families(2) {
        for phi in classes(2) {
            assert_eq!(p.is_generic(&phi).unwrap(), p.rhd_tt(&phi).unwrap());
        }
    }
}

#[test]
fn lambda_counts_refine_satisfaction() {
    for p in all_families(2) {
        for phi in classes(2) {
            let lambda = p.rhd_pt_lambda(&phi).unwrap();
            assert_eq!(lambda > 0, p.rhd_pt(&phi).unwrap());
            assert_eq!(lambda == p.len() && !p.is_empty(), {
                !p.is_empty() && p.rhd_tt(&phi).unwrap()
            });
        }
    }
}
