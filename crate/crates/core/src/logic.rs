//! Propositional sentences over the 0-ary predicate atoms `Q0, Q1, ...`:
//! AST, parser, printer, evaluation, entailment and canonical forms.
//!
//! Logical equivalence is decided by exhaustive evaluation over the
//! (finite) support, so every operation that builds a truth table caps the
//! support size it will accept.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Default support cap for truth-table operations (canonical, entails).
pub const EVAL_SUPPORT_CAP: usize = 16;
/// Default atom bound for equivalence-class enumeration: 2^(2^m) classes.
pub const ENUM_ATOM_CAP: u32 = 4;

/// Index of a 0-ary predicate symbol `Q_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u32);

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}", self.0)
    }
}

/// A propositional sentence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sentence {
    True,
    False,
    Atom(AtomId),
    Not(Box<Sentence>),
    And(Box<Sentence>, Box<Sentence>),
    Or(Box<Sentence>, Box<Sentence>),
    Implies(Box<Sentence>, Box<Sentence>),
    Iff(Box<Sentence>, Box<Sentence>),
}

/// Errors raised by the logic operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("atom {0} is not bound by the assignment")]
    UnboundAtom(AtomId),
    #[error("support size {0} exceeds the cap of {1} atoms")]
    SupportCapExceeded(usize, usize),
    #[error("atom bound {0} exceeds the enumeration cap of {1}")]
    EnumBoundExceeded(u32, u32),
}

pub fn atom(i: u32) -> Sentence {
    Sentence::Atom(AtomId(i))
}

pub fn not(s: Sentence) -> Sentence {
    Sentence::Not(Box::new(s))
}

pub fn and(a: Sentence, b: Sentence) -> Sentence {
    Sentence::And(Box::new(a), Box::new(b))
}

pub fn or(a: Sentence, b: Sentence) -> Sentence {
    Sentence::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Sentence, b: Sentence) -> Sentence {
    Sentence::Implies(Box::new(a), Box::new(b))
}

pub fn iff(a: Sentence, b: Sentence) -> Sentence {
    Sentence::Iff(Box::new(a), Box::new(b))
}

impl Sentence {
    /// The set of atoms occurring in the sentence.
    pub fn support(&self) -> BTreeSet<AtomId> {
        let mut acc = BTreeSet::new();
        self.collect_support(&mut acc);
        acc
    }

    fn collect_support(&self, acc: &mut BTreeSet<AtomId>) {
        match self {
            Sentence::True | Sentence::False => {}
            Sentence::Atom(a) => {
                acc.insert(*a);
            }
            Sentence::Not(s) => s.collect_support(acc),
            Sentence::And(a, b)
            | Sentence::Or(a, b)
            | Sentence::Implies(a, b)
            | Sentence::Iff(a, b) => {
                a.collect_support(acc);
                b.collect_support(acc);
            }
        }
    }

    /// Evaluates under a total valuation of the atoms.
    pub fn eval_with(&self, val: &impl Fn(AtomId) -> bool) -> bool {
        match self {
            Sentence::True => true,
            Sentence::False => false,
            Sentence::Atom(a) => val(*a),
            Sentence::Not(s) => !s.eval_with(val),
            Sentence::And(a, b) => a.eval_with(val) && b.eval_with(val),
            Sentence::Or(a, b) => a.eval_with(val) || b.eval_with(val),
            Sentence::Implies(a, b) => !a.eval_with(val) || b.eval_with(val),
            Sentence::Iff(a, b) => a.eval_with(val) == b.eval_with(val),
        }
    }

    /// Rewrites atoms: each atom is either fixed to a constant or renamed.
    /// Constant subterms are folded away.
    pub fn substitute(&self, subst: &impl Fn(AtomId) -> AtomSubst) -> Sentence {
        match self {
            Sentence::True => Sentence::True,
            Sentence::False => Sentence::False,
            Sentence::Atom(a) => match subst(*a) {
                AtomSubst::Const(true) => Sentence::True,
                AtomSubst::Const(false) => Sentence::False,
                AtomSubst::Rename(b) => Sentence::Atom(b),
            },
            Sentence::Not(s) => match s.substitute(subst) {
                Sentence::True => Sentence::False,
                Sentence::False => Sentence::True,
                t => not(t),
            },
            Sentence::And(a, b) => {
                match (a.substitute(subst), b.substitute(subst)) {
                    (Sentence::False, _) | (_, Sentence::False) => Sentence::False,
                    (Sentence::True, t) | (t, Sentence::True) => t,
                    (x, y) => and(x, y),
                }
            }
            Sentence::Or(a, b) => match (a.substitute(subst), b.substitute(subst)) {
                (Sentence::True, _) | (_, Sentence::True) => Sentence::True,
                (Sentence::False, t) | (t, Sentence::False) => t,
                (x, y) => or(x, y),
            },
            Sentence::Implies(a, b) => match (a.substitute(subst), b.substitute(subst)) {
                (Sentence::False, _) | (_, Sentence::True) => Sentence::True,
                (Sentence::True, t) => t,
                (t, Sentence::False) => match t {
                    Sentence::Not(inner) => *inner,
                    t => not(t),
                },
                (x, y) => implies(x, y),
            },
            Sentence::Iff(a, b) => match (a.substitute(subst), b.substitute(subst)) {
                (Sentence::True, t) | (t, Sentence::True) => t,
                (Sentence::False, t) | (t, Sentence::False) => match t {
                    Sentence::Not(inner) => *inner,
                    t => not(t),
                },
                (x, y) => iff(x, y),
            },
        }
    }
}

/// Action on an atom during [`Sentence::substitute`].
#[derive(Debug, Clone, Copy)]
pub enum AtomSubst {
    Const(bool),
    Rename(AtomId),
}

/// A finite total valuation of a declared atom set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    bits: BTreeMap<AtomId, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Self {
        Assignment {
            bits: pairs.into_iter().map(|(i, b)| (AtomId(i), b)).collect(),
        }
    }

    pub fn set(&mut self, a: AtomId, value: bool) {
        self.bits.insert(a, value);
    }

    pub fn get(&self, a: AtomId) -> Option<bool> {
        self.bits.get(&a).copied()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.bits.keys().copied()
    }
}

/// Standard propositional evaluation; errors if the assignment misses an
/// atom of the sentence.
pub fn eval(sentence: &Sentence, assignment: &Assignment) -> Result<bool, LogicError> {
    for a in sentence.support() {
        if assignment.get(a).is_none() {
            return Err(LogicError::UnboundAtom(a));
        }
    }
    Ok(sentence.eval_with(&|a| assignment.get(a).unwrap()))
}

/// The truth table of `sentence` over the given atom list: bit `r` of the
/// result holds the value under the row-`r` assignment, where bit `j` of
/// `r` gives the value of `atoms[j]`.
fn truth_table(sentence: &Sentence, atoms: &[AtomId]) -> u64 {
    debug_assert!(atoms.len() <= 6 || atoms.len() <= EVAL_SUPPORT_CAP);
    let rows = 1u64 << atoms.len();
    let mut table = 0u64;
    for row in 0..rows {
        let val = |a: AtomId| {
            let j = atoms.iter().position(|&x| x == a).unwrap();
            row >> j & 1 == 1
        };
        if sentence.eval_with(&val) {
            table |= 1 << row;
        }
    }
    table
}

fn table_rows(sentence: &Sentence, atoms: &[AtomId]) -> Vec<bool> {
    let rows = 1usize << atoms.len();
    (0..rows)
        .map(|row| {
            sentence.eval_with(&|a: AtomId| {
                let j = atoms.iter().position(|&x| x == a).unwrap();
                row >> j & 1 == 1
            })
        })
        .collect()
}

fn check_cap(atoms: usize, cap: usize) -> Result<(), LogicError> {
    if atoms > cap {
        Err(LogicError::SupportCapExceeded(atoms, cap))
    } else {
        Ok(())
    }
}

/// Canonical form: the sorted complete disjunctive normal form over the
/// atoms the sentence essentially depends on. Two sentences are logically
/// equivalent iff their canonical forms are equal.
pub fn canonical(sentence: &Sentence) -> Result<Sentence, LogicError> {
    canonical_with_cap(sentence, EVAL_SUPPORT_CAP)
}

pub fn canonical_with_cap(sentence: &Sentence, cap: usize) -> Result<Sentence, LogicError> {
    let support: Vec<AtomId> = sentence.support().into_iter().collect();
    check_cap(support.len(), cap)?;
    let rows = table_rows(sentence, &support);

    // Drop atoms the table does not depend on.
    let mut essential = Vec::new();
    for (j, &a) in support.iter().enumerate() {
        let depends = (0..rows.len()).any(|r| rows[r] != rows[r ^ (1 << j)]);
        if depends {
            essential.push((j, a));
        }
    }

    let ess_rows = 1usize << essential.len();
    let mut minterms = Vec::new();
    for er in 0..ess_rows {
        // Non-essential atoms contribute nothing; read any completion.
        let mut full_row = 0usize;
        for (bit, &(j, _)) in essential.iter().enumerate() {
            if er >> bit & 1 == 1 {
                full_row |= 1 << j;
            }
        }
        if rows[full_row] {
            minterms.push(er);
        }
    }

    if minterms.is_empty() {
        return Ok(Sentence::False);
    }
    if minterms.len() == ess_rows {
        return Ok(Sentence::True);
    }
    let dnf = minterms
        .into_iter()
        .map(|er| {
            essential
                .iter()
                .enumerate()
                .map(|(bit, &(_, a))| {
                    if er >> bit & 1 == 1 {
                        Sentence::Atom(a)
                    } else {
                        not(Sentence::Atom(a))
                    }
                })
                .reduce(and)
                .unwrap()
        })
        .reduce(or)
        .unwrap();
    Ok(dnf)
}

pub fn is_consistent(sentence: &Sentence) -> Result<bool, LogicError> {
    Ok(!matches!(canonical(sentence)?, Sentence::False))
}

pub fn is_tautology(sentence: &Sentence) -> Result<bool, LogicError> {
    Ok(matches!(canonical(sentence)?, Sentence::True))
}

/// Truth-table entailment over the combined support.
pub fn entails(premise: &Sentence, conclusion: &Sentence) -> Result<bool, LogicError> {
    let mut atoms = premise.support();
    atoms.extend(conclusion.support());
    let atoms: Vec<AtomId> = atoms.into_iter().collect();
    check_cap(atoms.len(), EVAL_SUPPORT_CAP)?;
    if atoms.len() <= 6 {
        let p = truth_table(premise, &atoms);
        let c = truth_table(conclusion, &atoms);
        return Ok(p & !c == 0);
    }
    let p = table_rows(premise, &atoms);
    let c = table_rows(conclusion, &atoms);
    Ok(p.iter().zip(&c).all(|(&pv, &cv)| !pv || cv))
}

pub fn equivalent(a: &Sentence, b: &Sentence) -> Result<bool, LogicError> {
    Ok(entails(a, b)? && entails(b, a)?)
}

/// Yields one canonical representative per logical-equivalence class over
/// the atoms `Q0..Q{m-1}`; there are `2^(2^m)` classes. `limit` truncates
/// the stream.
pub fn enumerate_sentences(
    atom_bound: u32,
    limit: Option<usize>,
) -> Result<Vec<Sentence>, LogicError> {
    if atom_bound > ENUM_ATOM_CAP {
        return Err(LogicError::EnumBoundExceeded(atom_bound, ENUM_ATOM_CAP));
    }
    let atoms: Vec<AtomId> = (0..atom_bound).map(AtomId).collect();
    let rows = 1u32 << atom_bound;
    let classes: u64 = 1u64 << (1u64 << atom_bound);
    let take = limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for mask in 0..classes {
        if out.len() >= take {
            break;
        }
        out.push(sentence_from_table(mask, rows, &atoms)?);
    }
    Ok(out)
}

/// Builds the canonical sentence whose truth table over `atoms` is `mask`.
fn sentence_from_table(mask: u64, rows: u32, atoms: &[AtomId]) -> Result<Sentence, LogicError> {
    if mask == 0 {
        return Ok(Sentence::False);
    }
    let dnf = (0..rows)
        .filter(|row| mask >> row & 1 == 1)
        .map(|row| {
            atoms
                .iter()
                .enumerate()
                .map(|(j, &a)| {
                    if row >> j & 1 == 1 {
                        Sentence::Atom(a)
                    } else {
                        not(Sentence::Atom(a))
                    }
                })
                .reduce(and)
                .unwrap_or(Sentence::True)
        })
        .reduce(or)
        .unwrap();
    canonical(&dnf)
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

// Precedence levels, loosest first: iff, implies, or, and, unary.
fn prec(s: &Sentence) -> u8 {
    match s {
        Sentence::Iff(..) => 0,
        Sentence::Implies(..) => 1,
        Sentence::Or(..) => 2,
        Sentence::And(..) => 3,
        _ => 4,
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(s: &Sentence, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let p = prec(s);
            let parens = p < min;
            if parens {
                write!(f, "(")?;
            }
            match s {
                Sentence::True => write!(f, "true")?,
                Sentence::False => write!(f, "false")?,
                Sentence::Atom(a) => write!(f, "{a}")?,
                Sentence::Not(inner) => {
                    write!(f, "!")?;
                    go(inner, 4, f)?;
                }
                // Left-associative chains print flat; "->" is
                // right-associative so the left side binds tighter.
                Sentence::And(a, b) => {
                    go(a, 3, f)?;
                    write!(f, " & ")?;
                    go(b, 4, f)?;
                }
                Sentence::Or(a, b) => {
                    go(a, 2, f)?;
                    write!(f, " | ")?;
                    go(b, 3, f)?;
                }
                Sentence::Implies(a, b) => {
                    go(a, 2, f)?;
                    write!(f, " -> ")?;
                    go(b, 1, f)?;
                }
                Sentence::Iff(a, b) => {
                    go(a, 0, f)?;
                    write!(f, " <-> ")?;
                    go(b, 1, f)?;
                }
            }
            if parens {
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> LogicError {
        LogicError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat_str(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    // sentence := iff
    fn sentence(&mut self) -> Result<Sentence, LogicError> {
        self.iff()
    }

    // iff := imp ("<->" imp)*   (left-associative)
    fn iff(&mut self) -> Result<Sentence, LogicError> {
        let mut left = self.imp()?;
        loop {
            self.skip_ws();
            if self.eat_str("<->") {
                let right = self.imp()?;
                left = iff(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    // imp := or ("->" or)*   (right-associative)
    fn imp(&mut self) -> Result<Sentence, LogicError> {
        let left = self.or()?;
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(b"->") {
            self.pos += 2;
            let right = self.imp()?;
            Ok(implies(left, right))
        } else {
            Ok(left)
        }
    }

    // or := and ("|" and)*
    fn or(&mut self) -> Result<Sentence, LogicError> {
        let mut left = self.and()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            left = or(left, self.and()?);
        }
        Ok(left)
    }

    // and := unary ("&" unary)*
    fn and(&mut self) -> Result<Sentence, LogicError> {
        let mut left = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            left = and(left, self.unary()?);
        }
        Ok(left)
    }

    // unary := "!" unary | "(" sentence ")" | "true" | "false" | atom
    fn unary(&mut self) -> Result<Sentence, LogicError> {
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sentence()?;
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.error("expected ')'"))
                }
            }
            Some(b't') if self.eat_str("true") => Ok(Sentence::True),
            Some(b'f') if self.eat_str("false") => Ok(Sentence::False),
            Some(b'Q') => {
                self.pos += 1;
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit())
                {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected digits after 'Q'"));
                }
                let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let index: u32 = digits
                    .parse()
                    .map_err(|_| self.error("atom index out of range"))?;
                Ok(atom(index))
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses a sentence; see the module grammar. Parsing the printed form of
/// any sentence is a fixpoint up to logical equivalence.
pub fn parse_sentence(text: &str) -> Result<Sentence, LogicError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let s = p.sentence()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input after sentence"));
    }
    Ok(s)
}

impl FromStr for Sentence {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sentence(s)
    }
}
