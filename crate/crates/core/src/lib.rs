//! Symbolic computation of RS-ranks, ds-degrees, satisfaction relations,
//! spectra and generic sentences for families of complete theories over
//! languages of 0-ary predicates.
//!
//! A complete theory over a 0-ary predicate language is an assignment of
//! truth values to the atoms `Q0, Q1, ...`, i.e. a point of Cantor space.
//! Families of such theories are represented either explicitly
//! ([`finite::FiniteFamily`]) or as finitely-described infinite sets
//! ([`symbolic::SymbolicFamily`]).

pub mod corpus;
pub mod dsl;
pub mod finite;
pub mod logic;
pub mod ordinal;
pub mod symbolic;

pub use finite::FiniteFamily;
pub use logic::{Assignment, AtomId, Sentence};
pub use ordinal::{Ordinal, RankDegree, RankValue};
pub use symbolic::{CardinalValue, PointTheory, SymbolicFamily};
