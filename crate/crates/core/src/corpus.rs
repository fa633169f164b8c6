//! Test corpora: exhaustive enumeration of small grammar terms, and seeded
//! random samplers for families and sentences. Shared by the property
//! suites and the verification harness.

use rand::Rng;

use crate::logic::{self, Sentence};
use crate::ordinal::Ordinal;
use crate::symbolic::{build_tower, Guard, PointTheory, SymbolicFamily};

/// Leaf families for the bounded corpus.
fn leaves() -> Vec<SymbolicFamily> {
    let all0 = PointTheory::all(false);
    vec![
        SymbolicFamily::Full,
        SymbolicFamily::eminimal(),
        SymbolicFamily::eminimal_spaced(2, 0),
        SymbolicFamily::fin([all0.clone()]),
        SymbolicFamily::fin([PointTheory::one_hot(0), PointTheory::one_hot(1)]),
        SymbolicFamily::fin([all0, PointTheory::one_hot(0), PointTheory::from_flips(false, [0, 1])]),
    ]
}

fn guard_pool() -> Vec<Guard> {
    vec![
        Guard::from_pairs([(0, true)]),
        Guard::from_pairs([(0, false)]),
        Guard::from_pairs([(1, true)]),
        Guard::from_pairs([(0, true), (1, false)]),
    ]
}

/// Every grammar term of size at most `max_size` (node count, guards
/// counted with their node) over the leaf pool, including the E-closure of
/// each term. Deduplicated by normal form.
pub fn bounded_corpus(max_size: usize) -> Vec<SymbolicFamily> {
    let mut by_size: Vec<Vec<SymbolicFamily>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        by_size[1] = leaves();
        by_size[1].push(SymbolicFamily::Empty);
    }
    for size in 2..=max_size {
        let mut terms = Vec::new();
        for child in &by_size[size - 1] {
            terms.push(SymbolicFamily::omega_sum(child.clone()));
            for g in guard_pool() {
                terms.push(SymbolicFamily::guard(g, child.clone()));
            }
        }
        for left_size in 1..size - 1 {
            let right_size = size - 1 - left_size;
            for a in &by_size[left_size] {
                for b in &by_size[right_size] {
                    terms.push(SymbolicFamily::union(vec![a.clone(), b.clone()]));
                }
            }
        }
        by_size[size] = terms;
    }

    let mut out: Vec<SymbolicFamily> = Vec::new();
    for bucket in by_size {
        for term in bucket {
            if !out.contains(&term) {
                out.push(term);
            }
        }
    }
    let closures: Vec<SymbolicFamily> = out.iter().map(|t| t.closure().0).collect();
    for c in closures {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// One canonical sentence per equivalence class over `Q0..Q{m-1}`.
pub fn sentence_classes(atom_bound: u32) -> Vec<Sentence> {
    logic::enumerate_sentences(atom_bound, None).expect("atom bound within the enumeration cap")
}

/// A random sentence over the first `atom_bound` atoms.
pub fn random_sentence(rng: &mut impl Rng, atom_bound: u32, depth: u32) -> Sentence {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..6) {
            0 => Sentence::True,
            1 => Sentence::False,
            _ => logic::atom(rng.gen_range(0..atom_bound)),
        };
    }
    let a = random_sentence(rng, atom_bound, depth - 1);
    match rng.gen_range(0..5) {
        0 => logic::not(a),
        1 => logic::and(a, random_sentence(rng, atom_bound, depth - 1)),
        2 => logic::or(a, random_sentence(rng, atom_bound, depth - 1)),
        3 => logic::implies(a, random_sentence(rng, atom_bound, depth - 1)),
        _ => logic::iff(a, random_sentence(rng, atom_bound, depth - 1)),
    }
}

/// A random point with flips among the first few atoms.
pub fn random_point(rng: &mut impl Rng) -> PointTheory {
    let default = rng.gen_ratio(1, 8);
    let mut flips = Vec::new();
    for _ in 0..4 {
        if rng.gen_ratio(1, 3) {
            flips.push(rng.gen_range(0..5u32));
        }
    }
    PointTheory::from_flips(default, flips)
}

/// A random symbolic family. `allow_full` admits full kernels (rank
/// infinity material); towers up to rank `w*2` and degree 3 appear as
/// leaves.
pub fn random_family(rng: &mut impl Rng, depth: u32, allow_full: bool) -> SymbolicFamily {
    if depth == 0 || rng.gen_ratio(2, 5) {
        return random_leaf(rng, allow_full);
    }
    match rng.gen_range(0..8) {
        0 | 1 => SymbolicFamily::omega_sum(random_family(rng, depth - 1, allow_full)),
        2 | 3 => SymbolicFamily::union(
            (0..rng.gen_range(2..=3))
                .map(|_| random_family(rng, depth - 1, allow_full))
                .collect(),
        ),
        4 => SymbolicFamily::guard(
            Guard::from_pairs([(rng.gen_range(0..3u32), rng.gen_bool(0.5))]),
            random_family(rng, depth - 1, allow_full),
        ),
        5 => random_family(rng, depth - 1, allow_full).closure().0,
        _ => random_leaf(rng, allow_full),
    }
}

fn random_leaf(rng: &mut impl Rng, allow_full: bool) -> SymbolicFamily {
    match rng.gen_range(0..10) {
        0 if allow_full => SymbolicFamily::Full,
        1 => SymbolicFamily::eminimal(),
        2 => SymbolicFamily::eminimal_spaced(rng.gen_range(1..=3), rng.gen_range(0..=2)),
        3 | 4 => {
            let count = rng.gen_range(1..=3);
            SymbolicFamily::fin((0..count).map(|_| random_point(rng)))
        }
        5 => {
            let rank = random_tower_rank(rng);
            let degree = rng.gen_range(1..=3);
            build_tower(&rank, degree).expect("corpus tower ranks are in range")
        }
        _ => SymbolicFamily::eminimal(),
    }
}

fn random_tower_rank(rng: &mut impl Rng) -> Ordinal {
    match rng.gen_range(0..6) {
        0 => Ordinal::from_nat(rng.gen_range(0..=3)),
        1 => Ordinal::omega(),
        2 => Ordinal::omega().succ(),
        3 => Ordinal::omega_power(Ordinal::one(), 2),
        _ => Ordinal::from_nat(rng.gen_range(1..=2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn bounded_corpus_is_substantial_and_deduplicated() {
        let corpus = bounded_corpus(3);
        assert!(corpus.len() > 30, "corpus has {} terms", corpus.len());
        for (i, a) in corpus.iter().enumerate() {
            for b in corpus.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn random_families_are_well_formed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let fam = random_family(&mut rng, 3, true);
            // Normalization invariants: rank_degree and cardinality agree
            // on emptiness.
            let empty_rank = fam.rank_degree().is_empty();
            let empty_card = fam.cardinality() == crate::symbolic::CardinalValue::Finite(0);
            assert_eq!(empty_rank, empty_card, "family {fam}");
        }
    }
}
