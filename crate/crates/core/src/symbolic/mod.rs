//! Finitely-described families of complete theories over the countable
//! 0-ary language `Q0, Q1, ...`.
//!
//! A family is a tree-grammar term. Guarded constructors (`OmegaSum`,
//! `Union`, `LimitTower`) address their children through pairwise
//! inconsistent one-hot prefix guards, and a child's atom `Q0` denotes the
//! first global atom after its guard prefix, so every term denotes a set of
//! [`PointTheory`] over the global atoms. `Disjoint` is a direct union of
//! pairwise disjoint families in the *same* atom frame; it is what
//! restriction and E-closure produce, since those operations are not
//! expressible with fresh-prefix guards alone.

mod closure;
mod generic;
mod oracle;
mod rank;
mod restrict;
mod tower;

pub use closure::AccumulationReport;
pub use generic::{GeneratorSet, GenericTheories};
pub use oracle::rank_by_definition_oracle;
pub use rank::{FinitePart, InfiniteCard, PtSpectrum, SpectrumRd, SpectrumShape};
pub use tower::build_tower;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::logic::{AtomId, AtomSubst, LogicError, Sentence};
use crate::ordinal::Ordinal;

/// Cardinality of a family: finite, countable, or continuum. The language
/// is countable, so no other cardinalities arise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalValue {
    Finite(u64),
    Aleph0,
    Continuum,
}

impl CardinalValue {
    pub fn is_infinite(self) -> bool {
        !matches!(self, CardinalValue::Finite(_))
    }

    /// Cardinal addition.
    pub fn plus(self, other: CardinalValue) -> CardinalValue {
        use CardinalValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            (a, b) => a.max(b),
        }
    }

    /// Cardinality of a countable disjoint sum of copies: zero for the
    /// empty family, countable for nonempty countable fibers, continuum
    /// for continuum fibers.
    pub fn omega_copies(self) -> CardinalValue {
        use CardinalValue::*;
        match self {
            Finite(0) => Finite(0),
            Finite(_) | Aleph0 => Aleph0,
            Continuum => Continuum,
        }
    }
}

impl fmt::Display for CardinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalValue::Finite(n) => write!(f, "{n}"),
            CardinalValue::Aleph0 => write!(f, "aleph0"),
            CardinalValue::Continuum => write!(f, "continuum"),
        }
    }
}

/// A complete theory: a point of Cantor space with an eventually-constant
/// description. `exceptions` lists the atoms whose value differs from
/// `default`; the map never contains an entry equal to the default.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointTheory {
    default: bool,
    exceptions: BTreeMap<u32, bool>,
}

impl PointTheory {
    pub fn all(default: bool) -> Self {
        PointTheory {
            default,
            exceptions: BTreeMap::new(),
        }
    }

    /// All atoms false except `Q_i`.
    pub fn one_hot(i: u32) -> Self {
        PointTheory::all(false).with(i, true)
    }

    pub fn with(mut self, atom: u32, value: bool) -> Self {
        if value == self.default {
            self.exceptions.remove(&atom);
        } else {
            self.exceptions.insert(atom, value);
        }
        self
    }

    pub fn from_flips(default: bool, flipped: impl IntoIterator<Item = u32>) -> Self {
        PointTheory {
            default,
            exceptions: flipped.into_iter().map(|a| (a, !default)).collect(),
        }
    }

    pub fn default_value(&self) -> bool {
        self.default
    }

    /// Atoms whose value differs from the default, ascending.
    pub fn flipped_atoms(&self) -> impl Iterator<Item = u32> + '_ {
        self.exceptions.keys().copied()
    }

    pub fn value(&self, atom: u32) -> bool {
        self.exceptions.get(&atom).copied().unwrap_or(self.default)
    }

    /// Index of the first atom valued true, if any.
    pub fn first_true(&self) -> Option<u32> {
        if self.default {
            // All atoms are true except finitely many exceptions.
            let mut i = 0;
            loop {
                if self.value(i) {
                    return Some(i);
                }
                i += 1;
            }
        } else {
            self.exceptions.keys().copied().next()
        }
    }

    /// True when the point is exactly one-hot: a single true atom on an
    /// all-false background.
    pub fn as_one_hot(&self) -> Option<u32> {
        if !self.default && self.exceptions.len() == 1 {
            self.exceptions.keys().copied().next()
        } else {
            None
        }
    }

    pub fn is_all(&self, value: bool) -> bool {
        self.default == value && self.exceptions.is_empty()
    }

    /// Drops the first `k` atoms, re-indexing the rest.
    pub fn drop_atoms_below(&self, k: u32) -> PointTheory {
        PointTheory {
            default: self.default,
            exceptions: self
                .exceptions
                .iter()
                .filter(|&(&a, _)| a >= k)
                .map(|(&a, &v)| (a - k, v))
                .collect(),
        }
    }

    /// Satisfies every literal of the partial assignment.
    pub fn matches(&self, guard: &Guard) -> bool {
        guard.iter().all(|(a, v)| self.value(a) == v)
    }

    /// Re-indexes the point into the frame of a guard's child: guarded
    /// atoms are removed, the rest close ranks. The point must match the
    /// guard.
    pub fn project(&self, guard: &Guard) -> PointTheory {
        debug_assert!(self.matches(guard));
        PointTheory {
            default: self.default,
            exceptions: self
                .exceptions
                .iter()
                .filter(|&(&a, _)| !guard.binds(a))
                .map(|(&a, &v)| (guard.local_index(a), v))
                .collect(),
        }
    }

    /// Inverse of [`PointTheory::project`]: places a child-frame point
    /// under the guard.
    pub fn embed(&self, guard: &Guard) -> PointTheory {
        let mut exceptions: BTreeMap<u32, bool> = self
            .exceptions
            .iter()
            .map(|(&a, &v)| (guard.global_index(a), v))
            .collect();
        for (a, v) in guard.iter() {
            if v != self.default {
                exceptions.insert(a, v);
            }
        }
        PointTheory {
            default: self.default,
            exceptions,
        }
    }

    pub fn eval(&self, sentence: &Sentence) -> bool {
        sentence.eval_with(&|a: AtomId| self.value(a.0))
    }
}

impl fmt::Display for PointTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*", if self.default { 1 } else { 0 })?;
        if !self.exceptions.is_empty() {
            write!(f, "[")?;
            for (i, a) in self.exceptions.keys().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// A finite partial assignment of atoms, used as a clopen-cylinder guard.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Guard {
    bindings: BTreeMap<u32, bool>,
}

impl Guard {
    pub fn new() -> Self {
        Guard::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Self {
        Guard {
            bindings: pairs.into_iter().collect(),
        }
    }

    /// `Q0..Q{i-1}` false and `Q_i` true: the guard of branch `i` in the
    /// one-hot prefix scheme.
    pub fn one_hot_prefix(i: u32) -> Self {
        Guard::from_pairs((0..i).map(|a| (a, false)).chain([(i, true)]))
    }

    /// `Q0..Q{k-1}` all false.
    pub fn zeros(k: u32) -> Self {
        Guard::from_pairs((0..k).map(|a| (a, false)))
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn binds(&self, atom: u32) -> bool {
        self.bindings.contains_key(&atom)
    }

    pub fn value(&self, atom: u32) -> Option<bool> {
        self.bindings.get(&atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.bindings.iter().map(|(&a, &v)| (a, v))
    }

    /// Two guards are incompatible when they disagree on a common atom.
    pub fn conflicts(&self, other: &Guard) -> bool {
        self.iter()
            .any(|(a, v)| other.value(a).is_some_and(|w| w != v))
    }

    /// Child-frame index of an unguarded global atom.
    pub fn local_index(&self, global: u32) -> u32 {
        debug_assert!(!self.binds(global));
        global - self.bindings.keys().filter(|&&a| a < global).count() as u32
    }

    /// Global index of a child-frame atom: the `local`-th unguarded atom.
    pub fn global_index(&self, local: u32) -> u32 {
        let mut remaining = local;
        let mut global = 0u32;
        loop {
            if !self.binds(global) {
                if remaining == 0 {
                    return global;
                }
                remaining -= 1;
            }
            global += 1;
        }
    }

    /// The conjunction of the guard's literals; `true` for the empty guard.
    pub fn sentence(&self) -> Sentence {
        self.iter()
            .map(|(a, v)| {
                if v {
                    crate::logic::atom(a)
                } else {
                    crate::logic::not(crate::logic::atom(a))
                }
            })
            .reduce(crate::logic::and)
            .unwrap_or(Sentence::True)
    }

    /// Fixes the guard's atoms in a sentence and re-indexes the rest into
    /// the child frame.
    pub fn project_sentence(&self, sentence: &Sentence) -> Sentence {
        sentence.substitute(&|a: AtomId| match self.value(a.0) {
            Some(v) => AtomSubst::Const(v),
            None => AtomSubst::Rename(AtomId(self.local_index(a.0))),
        })
    }

    /// Renames a child-frame sentence into global atoms (without conjoining
    /// the guard itself).
    pub fn embed_sentence(&self, sentence: &Sentence) -> Sentence {
        sentence.substitute(&|a: AtomId| AtomSubst::Rename(AtomId(self.global_index(a.0))))
    }

    /// Removes atom 0 (which must be unbound) and shifts the rest down.
    fn shift_down(&self) -> Guard {
        debug_assert!(!self.binds(0));
        Guard {
            bindings: self.bindings.iter().map(|(&a, &v)| (a - 1, v)).collect(),
        }
    }

    /// Composes an outer guard with a child-frame guard into a single
    /// global guard.
    pub fn compose(&self, inner: &Guard) -> Guard {
        let mut bindings = self.bindings.clone();
        for (a, v) in inner.iter() {
            bindings.insert(self.global_index(a), v);
        }
        Guard { bindings }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "Q{a}={}", if v { 1 } else { 0 })?;
        }
        Ok(())
    }
}

/// Tree-grammar representation of a family of theories.
///
/// Use the `normalized` constructor functions (or the DSL parser) rather
/// than building degenerate terms by hand: `Fin` is nonempty, `Union` has
/// at least two children, `Disjoint` pieces are pairwise disjoint, guards
/// are consistent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolicFamily {
    /// The empty family.
    Empty,
    /// An explicit nonempty finite set of points.
    Fin(BTreeSet<PointTheory>),
    /// One-hot points `T_k` true exactly at `offset + k*step` on an
    /// all-false background. `eminimal` proper is step 1, offset 0.
    EMinimal { step: u32, offset: u32 },
    /// Branch `i` guarded by the one-hot prefix at `i`, carrying a copy of
    /// the child over the shifted atoms.
    OmegaSum(Box<SymbolicFamily>),
    /// `k >= 2` children: child `j < k-1` guarded by the one-hot prefix at
    /// `j`, the last child by `k-1` leading zeros. Guards are pairwise
    /// inconsistent and jointly exhaustive.
    Union(Vec<SymbolicFamily>),
    /// All points matching the partial assignment whose projection lies in
    /// the child; the child occupies the unguarded atoms in order.
    Guard(Guard, Box<SymbolicFamily>),
    /// Direct union of pairwise disjoint families in the same frame.
    Disjoint(Vec<SymbolicFamily>),
    /// All assignments of the local atoms.
    Full,
    /// Branch `i` guarded by the one-hot prefix at `i`, carrying the
    /// degree-1 tower of rank `fundamental(limit, skip + i)`; `closed`
    /// replaces each branch by its E-closure.
    LimitTower {
        limit: Ordinal,
        skip: u64,
        closed: bool,
    },
}

/// Errors from symbolic-family operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymbolicError {
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("point {0} is not in the E-closure of the family")]
    PointNotInClosure(PointTheory),
    #[error("operation requires an E-closed family")]
    NotEClosed,
    #[error("family structure does not stabilize within the budget of {0} restriction classes")]
    NonStabilizing(usize),
    #[error("point {0} is not isolated within the search depth {1}")]
    NotIsolated(PointTheory, u32),
    #[error("tower rank exceeds the supported ordinal nesting depth")]
    OrdinalBoundExceeded,
    #[error("tower degree must be a positive natural number")]
    InvalidDegree,
    #[error("disjoint-union pieces are not verifiably pairwise disjoint")]
    NotDisjoint,
}

use SymbolicFamily::*;

impl SymbolicFamily {
    pub fn fin(points: impl IntoIterator<Item = PointTheory>) -> SymbolicFamily {
        normalize(Fin(points.into_iter().collect()))
    }

    pub fn eminimal() -> SymbolicFamily {
        EMinimal { step: 1, offset: 0 }
    }

    pub fn eminimal_spaced(step: u32, offset: u32) -> SymbolicFamily {
        assert!(step >= 1, "eminimal step must be positive");
        EMinimal { step, offset }
    }

    pub fn omega_sum(child: SymbolicFamily) -> SymbolicFamily {
        normalize(OmegaSum(Box::new(child)))
    }

    pub fn union(children: Vec<SymbolicFamily>) -> SymbolicFamily {
        normalize(Union(children))
    }

    pub fn guard(guard: Guard, child: SymbolicFamily) -> SymbolicFamily {
        normalize(Guard(guard, Box::new(child)))
    }

    /// Direct union; the caller asserts pairwise disjointness.
    pub(crate) fn disjoint_unchecked(pieces: Vec<SymbolicFamily>) -> SymbolicFamily {
        normalize(Disjoint(pieces))
    }

    /// Direct union with a conservative syntactic disjointness check:
    /// every pair must be separated by incompatible top-level guard
    /// cylinders, or involve explicit points checked by membership.
    pub fn disjoint(pieces: Vec<SymbolicFamily>) -> Result<SymbolicFamily, SymbolicError> {
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if !verifiably_disjoint(&pieces[i], &pieces[j]) {
                    return Err(SymbolicError::NotDisjoint);
                }
            }
        }
        Ok(SymbolicFamily::disjoint_unchecked(pieces))
    }

    pub fn is_empty_family(&self) -> bool {
        matches!(self, Empty)
    }

    /// Decides membership of a point.
    pub fn contains(&self, p: &PointTheory) -> bool {
        match self {
            Empty => false,
            Full => true,
            Fin(points) => points.contains(p),
            EMinimal { step, offset } => p
                .as_one_hot()
                .is_some_and(|a| a >= *offset && (a - offset) % step == 0),
            OmegaSum(child) => match p.first_true() {
                None => false,
                Some(i) => child.contains(&p.drop_atoms_below(i + 1)),
            },
            Union(children) => {
                let k = children.len() as u32;
                match p.first_true() {
                    Some(i) if i < k - 1 => {
                        children[i as usize].contains(&p.drop_atoms_below(i + 1))
                    }
                    _ => children[k as usize - 1].contains(&p.drop_atoms_below(k - 1)),
                }
            }
            Guard(g, child) => p.matches(g) && child.contains(&p.project(g)),
            Disjoint(pieces) => pieces.iter().any(|piece| piece.contains(p)),
            LimitTower { .. } => match p.first_true() {
                None => false,
                Some(i) => self
                    .limit_tower_branch(i as u64)
                    .contains(&p.drop_atoms_below(i + 1)),
            },
        }
    }

    /// Some member of the family, when nonempty.
    pub fn any_member(&self) -> Option<PointTheory> {
        match self {
            Empty => None,
            Full => Some(PointTheory::all(false)),
            Fin(points) => points.iter().next().cloned(),
            EMinimal { offset, .. } => Some(PointTheory::one_hot(*offset)),
            OmegaSum(child) => child
                .any_member()
                .map(|p| p.embed(&Guard::one_hot_prefix(0))),
            Union(children) => {
                let k = children.len() as u32;
                children.iter().enumerate().find_map(|(j, c)| {
                    let g = if (j as u32) < k - 1 {
                        Guard::one_hot_prefix(j as u32)
                    } else {
                        Guard::zeros(k - 1)
                    };
                    c.any_member().map(|p| p.embed(&g))
                })
            }
            Guard(g, child) => child.any_member().map(|p| p.embed(g)),
            Disjoint(pieces) => pieces.iter().find_map(|piece| piece.any_member()),
            LimitTower { .. } => self
                .limit_tower_branch(0)
                .any_member()
                .map(|p| p.embed(&Guard::one_hot_prefix(0))),
        }
    }

    /// Cardinality in `{finite, aleph0, continuum}`.
    pub fn cardinality(&self) -> CardinalValue {
        match self {
            Empty => CardinalValue::Finite(0),
            Fin(points) => CardinalValue::Finite(points.len() as u64),
            EMinimal { .. } | LimitTower { .. } => CardinalValue::Aleph0,
            OmegaSum(child) => child.cardinality().omega_copies(),
            Union(children) | Disjoint(children) => children
                .iter()
                .map(|c| c.cardinality())
                .fold(CardinalValue::Finite(0), CardinalValue::plus),
            Guard(_, child) => child.cardinality(),
            Full => CardinalValue::Continuum,
        }
    }

    /// All points of a finite family.
    pub fn enumerate_points(&self) -> Option<Vec<PointTheory>> {
        match self.cardinality() {
            CardinalValue::Finite(_) => {}
            _ => return None,
        }
        let mut out = Vec::new();
        self.collect_points(&mut out);
        Some(out)
    }

    fn collect_points(&self, out: &mut Vec<PointTheory>) {
        match self {
            Empty => {}
            Fin(points) => out.extend(points.iter().cloned()),
            Guard(g, child) => {
                let mut inner = Vec::new();
                child.collect_points(&mut inner);
                out.extend(inner.into_iter().map(|p| p.embed(g)));
            }
            Union(children) => {
                let k = children.len() as u32;
                for (j, c) in children.iter().enumerate() {
                    let g = if (j as u32) < k - 1 {
                        Guard::one_hot_prefix(j as u32)
                    } else {
                        Guard::zeros(k - 1)
                    };
                    let mut inner = Vec::new();
                    c.collect_points(&mut inner);
                    out.extend(inner.into_iter().map(|p| p.embed(&g)));
                }
            }
            Disjoint(pieces) => {
                for piece in pieces {
                    piece.collect_points(out);
                }
            }
            // Finite cardinality rules out the remaining constructors,
            // except OmegaSum over Empty which normalizes away.
            OmegaSum(_) | EMinimal { .. } | Full | LimitTower { .. } => {
                unreachable!("collect_points on an infinite constructor")
            }
        }
    }

    /// The branch family of an `OmegaSum`-style node at index `i`, in the
    /// branch's own frame.
    pub(crate) fn limit_tower_branch(&self, i: u64) -> SymbolicFamily {
        match self {
            LimitTower {
                limit,
                skip,
                closed,
            } => {
                let rank = limit.fundamental(skip + i);
                let t = tower::degree_one_tower(&rank);
                if *closed {
                    t.closure().0
                } else {
                    t
                }
            }
            _ => unreachable!("limit_tower_branch on a non-tower node"),
        }
    }

    /// Restricts by `Q0 = value` and drops atom 0, re-rooting the family
    /// over the remaining atoms. This is the single-step projection the
    /// definition-based rank oracle walks.
    pub fn project_first_atom(&self, value: bool) -> SymbolicFamily {
        let projected = match self {
            Empty => Empty,
            Full => Full,
            Fin(points) => Fin(points
                .iter()
                .filter(|p| p.value(0) == value)
                .map(|p| p.drop_atoms_below(1))
                .collect()),
            EMinimal { step, offset } => {
                if value {
                    if *offset == 0 {
                        SymbolicFamily::fin([PointTheory::all(false)])
                    } else {
                        Empty
                    }
                } else if *offset == 0 {
                    EMinimal {
                        step: *step,
                        offset: step - 1,
                    }
                } else {
                    EMinimal {
                        step: *step,
                        offset: offset - 1,
                    }
                }
            }
            OmegaSum(child) => {
                if value {
                    (**child).clone()
                } else {
                    self.clone()
                }
            }
            Union(children) => {
                if value {
                    children[0].clone()
                } else {
                    Union(children[1..].to_vec())
                }
            }
            Guard(g, child) => match g.value(0) {
                Some(v) if v != value => Empty,
                Some(_) => Guard(
                    Guard::from_pairs(g.iter().filter(|&(a, _)| a != 0).map(|(a, v)| (a - 1, v))),
                    child.clone(),
                ),
                None => Guard(g.shift_down(), Box::new(child.project_first_atom(value))),
            },
            Disjoint(pieces) => {
                Disjoint(pieces.iter().map(|p| p.project_first_atom(value)).collect())
            }
            LimitTower {
                limit,
                skip,
                closed,
            } => {
                if value {
                    self.limit_tower_branch(0)
                } else {
                    LimitTower {
                        limit: limit.clone(),
                        skip: skip + 1,
                        closed: *closed,
                    }
                }
            }
        };
        normalize(projected)
    }

    /// Restricts by agreement with `p` on atoms `0..depth` and re-roots.
    pub(crate) fn project_prefix(&self, p: &PointTheory, depth: u32) -> SymbolicFamily {
        let mut family = self.clone();
        for a in 0..depth {
            family = family.project_first_atom(p.value(a));
        }
        family
    }
}

/// Canonicalizes degenerate constructor shapes; all operations keep their
/// inputs and outputs normalized.
pub(crate) fn normalize(family: SymbolicFamily) -> SymbolicFamily {
    match family {
        Fin(points) => {
            if points.is_empty() {
                Empty
            } else {
                Fin(points)
            }
        }
        OmegaSum(child) => {
            if matches!(*child, Empty) {
                Empty
            } else {
                OmegaSum(child)
            }
        }
        Union(children) => match children.len() {
            0 => Empty,
            1 => children.into_iter().next().unwrap(),
            _ => {
                if children.iter().all(|c| matches!(c, Empty)) {
                    Empty
                } else {
                    Union(children)
                }
            }
        },
        Guard(g, child) => {
            if matches!(*child, Empty) {
                Empty
            } else if g.is_empty() {
                *child
            } else if let Guard(inner_g, inner_child) = *child {
                Guard(g.compose(&inner_g), inner_child)
            } else {
                Guard(g, child)
            }
        }
        Disjoint(pieces) => {
            let mut flat: Vec<SymbolicFamily> = Vec::new();
            let mut points: BTreeSet<PointTheory> = BTreeSet::new();
            for piece in pieces {
                match normalize(piece) {
                    Empty => {}
                    Fin(pts) => points.extend(pts),
                    Disjoint(inner) => {
                        for sub in inner {
                            match sub {
                                Fin(pts) => points.extend(pts),
                                other => flat.push(other),
                            }
                        }
                    }
                    other => flat.push(other),
                }
            }
            if !points.is_empty() {
                flat.push(Fin(points));
            }
            flat.sort();
            match flat.len() {
                0 => Empty,
                1 => flat.into_iter().next().unwrap(),
                _ => Disjoint(flat),
            }
        }
        other => other,
    }
}

/// Conservative syntactic disjointness test for user-supplied `disjoint`
/// pieces: top-level guard cylinders must conflict, or one side must be an
/// explicit point set checked by membership.
fn verifiably_disjoint(a: &SymbolicFamily, b: &SymbolicFamily) -> bool {
    fn cylinder(f: &SymbolicFamily) -> Option<&Guard> {
        match f {
            Guard(g, _) => Some(g),
            _ => None,
        }
    }
    if matches!(a, Empty) || matches!(b, Empty) {
        return true;
    }
    if let (Some(ga), Some(gb)) = (cylinder(a), cylinder(b)) {
        if ga.conflicts(gb) {
            return true;
        }
    }
    match (a, b) {
        (Fin(pts), other) | (other, Fin(pts)) => pts.iter().all(|p| !other.contains(p)),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn em() -> SymbolicFamily {
        SymbolicFamily::eminimal()
    }

    #[test]
    fn point_normalization_drops_default_entries() {
        let p = PointTheory::all(false).with(3, true).with(3, false);
        assert_eq!(p, PointTheory::all(false));
        assert_eq!(PointTheory::one_hot(2).first_true(), Some(2));
        assert_eq!(PointTheory::all(true).first_true(), Some(0));
        assert_eq!(PointTheory::all(true).with(0, false).first_true(), Some(1));
        assert_eq!(PointTheory::all(false).first_true(), None);
    }

    #[test]
    fn guard_index_maps_are_inverse() {
        let g = Guard::from_pairs([(0, true), (2, false)]);
        assert_eq!(g.global_index(0), 1);
        assert_eq!(g.global_index(1), 3);
        assert_eq!(g.local_index(1), 0);
        assert_eq!(g.local_index(3), 1);
        let p = PointTheory::one_hot(3).with(0, true);
        assert!(p.matches(&g));
        let local = p.project(&g);
        assert_eq!(local, PointTheory::one_hot(1));
        assert_eq!(local.embed(&g), p);
    }

    #[test]
    fn eminimal_membership_is_one_hot() {
        assert!(em().contains(&PointTheory::one_hot(0)));
        assert!(em().contains(&PointTheory::one_hot(7)));
        assert!(!em().contains(&PointTheory::all(false)));
        assert!(!em().contains(&PointTheory::one_hot(1).with(3, true)));

        let evens = SymbolicFamily::eminimal_spaced(2, 0);
        assert!(evens.contains(&PointTheory::one_hot(4)));
        assert!(!evens.contains(&PointTheory::one_hot(3)));
    }

    #[test]
    fn omega_sum_membership_follows_branches() {
        let f = SymbolicFamily::omega_sum(em());
        // Branch 2 then one-hot 1 inside: atoms 2 and 4 true.
        let p = PointTheory::from_flips(false, [2, 4]);
        assert!(f.contains(&p));
        assert!(!f.contains(&PointTheory::one_hot(2)));
        assert!(!f.contains(&PointTheory::all(false)));
    }

    #[test]
    fn cardinalities() {
        assert_eq!(em().cardinality(), CardinalValue::Aleph0);
        assert_eq!(Full.cardinality(), CardinalValue::Continuum);
        let five = SymbolicFamily::union(vec![
            SymbolicFamily::fin((0..2).map(PointTheory::one_hot)),
            SymbolicFamily::fin((0..3).map(PointTheory::one_hot)),
        ]);
        assert_eq!(five.cardinality(), CardinalValue::Finite(5));
        assert_eq!(
            SymbolicFamily::omega_sum(Full).cardinality(),
            CardinalValue::Continuum
        );
        assert_eq!(
            SymbolicFamily::omega_sum(em()).cardinality(),
            CardinalValue::Aleph0
        );
    }

    #[test]
    fn normalization_collapses_degenerates() {
        assert_eq!(SymbolicFamily::fin([]), Empty);
        assert_eq!(SymbolicFamily::omega_sum(Empty), Empty);
        assert_eq!(SymbolicFamily::union(vec![em()]), em());
        assert_eq!(SymbolicFamily::guard(Guard::new(), Full), Full);
        assert_eq!(
            SymbolicFamily::guard(Guard::from_pairs([(0, true)]), Empty),
            Empty
        );
        let nested = SymbolicFamily::guard(
            Guard::from_pairs([(0, true)]),
            SymbolicFamily::guard(Guard::from_pairs([(0, false)]), Full),
        );
        assert_eq!(
            nested,
            SymbolicFamily::guard(Guard::from_pairs([(0, true), (1, false)]), Full)
        );
    }

    #[test]
    fn disjoint_merges_and_dedupes_explicit_points() {
        let a = SymbolicFamily::fin([PointTheory::all(false)]);
        let inner = SymbolicFamily::disjoint_unchecked(vec![em(), a.clone()]);
        let outer = SymbolicFamily::disjoint_unchecked(vec![inner, a.clone()]);
        assert_eq!(
            outer,
            SymbolicFamily::disjoint_unchecked(vec![em(), a.clone()])
        );
    }

    #[test]
    fn disjoint_constructor_rejects_overlap() {
        let overlap = SymbolicFamily::disjoint(vec![
            em(),
            SymbolicFamily::fin([PointTheory::one_hot(0)]),
        ]);
        assert_eq!(overlap, Err(SymbolicError::NotDisjoint));

        let fine = SymbolicFamily::disjoint(vec![
            em(),
            SymbolicFamily::fin([PointTheory::all(false)]),
        ]);
        assert!(fine.is_ok());
    }

    #[test]
    fn projection_steps_are_self_similar() {
        assert_eq!(em().project_first_atom(false), em());
        assert_eq!(
            em().project_first_atom(true),
            SymbolicFamily::fin([PointTheory::all(false)])
        );
        let os = SymbolicFamily::omega_sum(em());
        assert_eq!(os.project_first_atom(false), os);
        assert_eq!(os.project_first_atom(true), em());

        let evens = SymbolicFamily::eminimal_spaced(2, 0);
        assert_eq!(
            evens.project_first_atom(false),
            SymbolicFamily::eminimal_spaced(2, 1)
        );
        assert_eq!(
            SymbolicFamily::eminimal_spaced(2, 1).project_first_atom(false),
            evens
        );
    }

    #[test]
    fn union_projection_peels_guards() {
        let u = SymbolicFamily::union(vec![Full, em()]);
        assert_eq!(u.project_first_atom(true), Full);
        assert_eq!(u.project_first_atom(false), em());
    }
}
