//! Ordinal arithmetic in Cantor normal form, and the rank/degree values
//! attached to families of theories.
//!
//! An ordinal is a sum `w^e1*c1 + ... + w^ek*ck` with strictly decreasing
//! ordinal exponents and positive coefficients; the empty sum is 0. The
//! representation supports every ordinal below epsilon_0, although nothing
//! in this crate constructs values at or above `w^w^w`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Cantor normal form ordinal: a list of `(exponent, coefficient)` terms
/// with strictly decreasing exponents and coefficients >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from_nat(1)
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// The first infinite ordinal.
    pub fn omega() -> Self {
        Ordinal {
            terms: vec![(Ordinal::one(), 1)],
        }
    }

    /// `w^exponent * coeff`, a single CNF term.
    pub fn omega_power(exponent: Ordinal, coeff: u64) -> Self {
        assert!(coeff >= 1, "CNF coefficients must be positive");
        Ordinal {
            terms: vec![(exponent, coeff)],
        }
    }

    /// Builds an ordinal from raw CNF terms; panics if the exponents are not
    /// strictly decreasing or a coefficient is zero.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Self {
        for window in terms.windows(2) {
            assert!(window[0].0 > window[1].0, "CNF exponents must decrease");
        }
        assert!(terms.iter().all(|&(_, c)| c >= 1));
        Ordinal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Natural-number value if the ordinal is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    /// True for nonzero ordinals with no trailing natural part.
    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        if last.1 > 1 {
            last.1 -= 1;
        } else {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    /// Ordinal addition: terms of `self` below the leading exponent of
    /// `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead_exp, lead_coeff)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = self
            .terms
            .iter()
            .take_while(|(e, _)| e > lead_exp)
            .cloned()
            .collect();
        let keep = self.terms.len() - terms.len();
        let merged = if keep > 0 && &self.terms[terms.len()].0 == lead_exp {
            self.terms[terms.len()].1 + lead_coeff
        } else {
            *lead_coeff
        };
        terms.push((lead_exp.clone(), merged));
        terms.extend(other.terms.iter().skip(1).cloned());
        Ordinal { terms }
    }

    /// The canonical fundamental sequence entry `alpha_i` for a limit
    /// ordinal: the last CNF term `w^e*c` is replaced by `w^e*(c-1)` plus an
    /// approach of `w^e` from below (`w^e' * i` for successor `e = e'+1`,
    /// and `w^{e_i}` for limit `e`).
    pub fn fundamental(&self, i: u64) -> Ordinal {
        assert!(self.is_limit(), "fundamental sequences need a limit ordinal");
        let mut terms = self.terms.clone();
        let (exp, coeff) = terms.pop().unwrap();
        let mut head = Ordinal { terms };
        if coeff > 1 {
            head = head.add(&Ordinal::omega_power(exp.clone(), coeff - 1));
        }
        let approach = if let Some(e_pred) = exp.pred() {
            if i == 0 {
                Ordinal::zero()
            } else {
                Ordinal::omega_power(e_pred, i)
            }
        } else {
            Ordinal::omega_power(exp.fundamental(i), 1)
        };
        head.add(&approach)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if exp.is_zero() {
                write!(f, "{coeff}")?;
            } else if exp.as_nat() == Some(1) {
                write!(f, "w")?;
                if *coeff > 1 {
                    write!(f, "*{coeff}")?;
                }
            } else {
                // Only naturals and a bare `w` parse unparenthesized in
                // exponent position.
                let bare = exp.as_nat().is_some() || *exp == Ordinal::omega();
                if bare {
                    write!(f, "w^{exp}")?;
                } else {
                    write!(f, "w^({exp})")?;
                }
                if *coeff > 1 {
                    write!(f, "*{coeff}")?;
                }
            }
        }
        Ok(())
    }
}

/// Errors from parsing the textual ordinal form.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrdinalParseError {
    #[error("unexpected character {0:?} in ordinal at byte {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of ordinal text")]
    UnexpectedEnd,
    #[error("ordinal terms must have strictly decreasing exponents")]
    NotNormalForm,
    #[error("coefficient must be a positive integer")]
    BadCoefficient,
}

struct OrdParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> OrdParser<'a> {
    fn peek(&self) -> Option<char> {
        self.bytes.get(self.pos).map(|&b| b as char)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => Err(OrdinalParseError::Unexpected(c, self.pos)),
                None => Err(OrdinalParseError::UnexpectedEnd),
            };
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| OrdinalParseError::BadCoefficient)
    }

    // term := "w" ("^" factor)? ("*" nat)? | nat
    fn term(&mut self) -> Result<(Ordinal, u64), OrdinalParseError> {
        self.skip_ws();
        if self.eat('w') {
            let exp = if self.eat('^') {
                self.factor()?
            } else {
                Ordinal::one()
            };
            let coeff = if self.eat('*') { self.nat()? } else { 1 };
            if coeff == 0 {
                return Err(OrdinalParseError::BadCoefficient);
            }
            Ok((exp, coeff))
        } else {
            let n = self.nat()?;
            if n == 0 {
                Ok((Ordinal::zero(), 0))
            } else {
                Ok((Ordinal::zero(), n))
            }
        }
    }

    fn factor(&mut self) -> Result<Ordinal, OrdinalParseError> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.ordinal()?;
            if !self.eat(')') {
                return Err(match self.peek() {
                    Some(c) => OrdinalParseError::Unexpected(c, self.pos),
                    None => OrdinalParseError::UnexpectedEnd,
                });
            }
            Ok(inner)
        } else if self.eat('w') {
            Ok(Ordinal::omega())
        } else {
            Ok(Ordinal::from_nat(self.nat()?))
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal, OrdinalParseError> {
        let mut terms = Vec::new();
        loop {
            let (exp, coeff) = self.term()?;
            if coeff > 0 {
                terms.push((exp, coeff));
            }
            if !self.eat('+') {
                break;
            }
        }
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalParseError::NotNormalForm);
            }
        }
        Ok(Ordinal { terms })
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = OrdParser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let ord = p.ordinal()?;
        p.skip_ws();
        match p.peek() {
            Some(c) => Err(OrdinalParseError::Unexpected(c, p.pos)),
            None => Ok(ord),
        }
    }
}

/// Rank of a family: `-1` for the empty family, an ordinal for totally
/// transcendental families, `infinity` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RankValue {
    MinusOne,
    Ranked(Ordinal),
    Infinity,
}

impl RankValue {
    pub fn ranked_nat(n: u64) -> Self {
        RankValue::Ranked(Ordinal::from_nat(n))
    }

    pub fn as_ordinal(&self) -> Option<&Ordinal> {
        match self {
            RankValue::Ranked(o) => Some(o),
            _ => None,
        }
    }
}

impl PartialOrd for RankValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RankValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use RankValue::*;
        match (self, other) {
            (MinusOne, MinusOne) | (Infinity, Infinity) => Ordering::Equal,
            (MinusOne, _) | (_, Infinity) => Ordering::Less,
            (_, MinusOne) | (Infinity, _) => Ordering::Greater,
            (Ranked(a), Ranked(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for RankValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankValue::MinusOne => write!(f, "-1"),
            RankValue::Ranked(o) => write!(f, "{o}"),
            RankValue::Infinity => write!(f, "∞"),
        }
    }
}

/// Combined rank and degree of a family. The degree exists exactly when the
/// rank is an ordinal, and is then at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RankDegree {
    /// Empty family, rank -1.
    Empty,
    /// Totally transcendental: ordinal rank with a positive degree.
    Ranked { rank: Ordinal, degree: u64 },
    /// Rank infinity; no degree.
    Infinite,
}

impl RankDegree {
    pub fn ranked(rank: Ordinal, degree: u64) -> Self {
        assert!(degree >= 1, "degree must be positive");
        RankDegree::Ranked { rank, degree }
    }

    pub fn ranked_nat(rank: u64, degree: u64) -> Self {
        RankDegree::ranked(Ordinal::from_nat(rank), degree)
    }

    pub fn rank(&self) -> RankValue {
        match self {
            RankDegree::Empty => RankValue::MinusOne,
            RankDegree::Ranked { rank, .. } => RankValue::Ranked(rank.clone()),
            RankDegree::Infinite => RankValue::Infinity,
        }
    }

    pub fn degree(&self) -> Option<u64> {
        match self {
            RankDegree::Ranked { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, RankDegree::Empty)
    }
}

impl fmt::Display for RankDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankDegree::Empty => write!(f, "RS=-1"),
            RankDegree::Ranked { rank, degree } => write!(f, "RS={rank}, ds={degree}"),
            RankDegree::Infinite => write!(f, "RS=∞"),
        }
    }
}

/// Pointwise maximum of a nonempty list of rank values.
pub fn rank_max(ranks: &[RankValue]) -> RankValue {
    assert!(!ranks.is_empty());
    ranks.iter().cloned().max().unwrap()
}

/// Combines rank/degree pairs of pairwise sentence-separated subfamilies:
/// the rank is the maximum, and the degree sums over entries attaining it.
pub fn degree_sum_at_max(parts: &[RankDegree]) -> RankDegree {
    assert!(!parts.is_empty());
    let top = rank_max(&parts.iter().map(|p| p.rank()).collect::<Vec<_>>());
    match top {
        RankValue::MinusOne => RankDegree::Empty,
        RankValue::Infinity => RankDegree::Infinite,
        RankValue::Ranked(rank) => {
            let degree = parts
                .iter()
                .filter(|p| p.rank() == RankValue::Ranked(rank.clone()))
                .map(|p| p.degree().unwrap())
                .sum();
            RankDegree::Ranked { rank, degree }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compares_omega_against_naturals() {
        assert!(Ordinal::omega() > Ordinal::from_nat(3));
        assert!(Ordinal::from_nat(3) < Ordinal::omega());
        assert_eq!(Ordinal::from_nat(5), ord("5"));
    }

    #[test]
    fn successor_of_omega() {
        assert_eq!(Ordinal::omega().succ(), ord("w+1"));
        assert_eq!(ord("w+1").pred(), Some(Ordinal::omega()));
    }

    #[test]
    fn addition_absorbs_lower_terms_on_the_left() {
        assert_eq!(Ordinal::from_nat(3).add(&Ordinal::omega()), Ordinal::omega());
        assert_eq!(ord("w+5").add(&ord("w")), ord("w*2"));
        assert_eq!(ord("w*2+1").add(&ord("w^2")), ord("w^2"));
        assert_eq!(ord("w^2").add(&ord("w+1")), ord("w^2+w+1"));
    }

    #[test]
    fn parse_print_round_trip_on_reference_forms() {
        for text in ["0", "5", "w", "w+3", "w^2*4+w*2+1", "w^w", "w^(w+1)*2+w^3"] {
            let o = ord(text);
            assert_eq!(o.to_string(), text);
            assert_eq!(ord(&o.to_string()), o);
        }
    }

    #[test]
    fn parser_rejects_non_normal_forms() {
        assert_eq!(
            "1+w".parse::<Ordinal>(),
            Err(OrdinalParseError::NotNormalForm)
        );
        assert!("w^".parse::<Ordinal>().is_err());
    }

    #[test]
    fn limit_and_successor_classification() {
        assert!(ord("w").is_limit());
        assert!(ord("w^2*3").is_limit());
        assert!(!ord("w+1").is_limit());
        assert!(ord("w+1").is_successor());
        assert!(!ord("0").is_limit());
    }

    #[test]
    fn fundamental_sequence_of_omega_is_naturals() {
        for i in 0..5 {
            assert_eq!(ord("w").fundamental(i), Ordinal::from_nat(i));
        }
    }

    #[test]
    fn fundamental_sequence_reads_the_last_term() {
        assert_eq!(ord("w*2").fundamental(3), ord("w+3"));
        assert_eq!(ord("w^2").fundamental(4), ord("w*4"));
        assert_eq!(ord("w^w").fundamental(2), ord("w^2"));
        assert_eq!(ord("w^2+w").fundamental(5), ord("w^2+5"));
    }

    #[test]
    fn rank_values_are_totally_ordered() {
        let vals = [
            RankValue::MinusOne,
            RankValue::ranked_nat(0),
            RankValue::ranked_nat(1),
            RankValue::Ranked(Ordinal::omega()),
            RankValue::Infinity,
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn degree_sums_only_at_the_maximum_rank() {
        let combined = degree_sum_at_max(&[
            RankDegree::ranked_nat(1, 2),
            RankDegree::ranked_nat(1, 3),
        ]);
        assert_eq!(combined, RankDegree::ranked_nat(1, 5));

        let combined = degree_sum_at_max(&[
            RankDegree::ranked_nat(2, 1),
            RankDegree::ranked_nat(0, 7),
        ]);
        assert_eq!(combined, RankDegree::ranked_nat(2, 1));

        let combined = degree_sum_at_max(&[RankDegree::Empty, RankDegree::Empty]);
        assert_eq!(combined, RankDegree::Empty);

        let combined = degree_sum_at_max(&[RankDegree::Infinite, RankDegree::ranked_nat(1, 2)]);
        assert_eq!(combined, RankDegree::Infinite);
    }

    fn arb_ordinal(depth: u32) -> BoxedStrategy<Ordinal> {
        if depth == 0 {
            (0u64..6).prop_map(Ordinal::from_nat).boxed()
        } else {
            prop::collection::vec((arb_ordinal(depth - 1), 1u64..4), 0..3)
                .prop_map(|mut terms| {
                    terms.sort_by(|a, b| b.0.cmp(&a.0));
                    terms.dedup_by(|a, b| a.0 == b.0);
                    Ordinal::from_terms(terms)
                })
                .boxed()
        }
    }

    proptest! {
        #[test]
        fn add_is_associative(a in arb_ordinal(2), b in arb_ordinal(2), c in arb_ordinal(2)) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn add_one_is_succ(a in arb_ordinal(2)) {
            prop_assert_eq!(a.add(&Ordinal::one()), a.succ());
            prop_assert!(a < a.succ());
        }

        #[test]
        fn max_is_commutative_and_idempotent(a in arb_ordinal(2), b in arb_ordinal(2)) {
            prop_assert_eq!(a.clone().max(b.clone()), b.clone().max(a.clone()));
            prop_assert_eq!(a.clone().max(a.clone()), a.clone());
        }

        #[test]
        fn display_round_trips(a in arb_ordinal(2)) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn fundamental_sequence_increases_below_limit(a in arb_ordinal(2)) {
            if a.is_limit() {
                let f3 = a.fundamental(3);
                let f4 = a.fundamental(4);
                prop_assert!(f3 < f4);
                prop_assert!(f4 < a);
            }
        }

        #[test]
        fn degree_sum_invariant_under_permutation(
            mut parts in prop::collection::vec((0u64..3, 1u64..4), 1..5)
        ) {
            let as_rd: Vec<RankDegree> =
                parts.iter().map(|&(r, d)| RankDegree::ranked_nat(r, d)).collect();
            let forward = degree_sum_at_max(&as_rd);
            parts.reverse();
            let as_rd: Vec<RankDegree> =
                parts.iter().map(|&(r, d)| RankDegree::ranked_nat(r, d)).collect();
            prop_assert_eq!(forward, degree_sum_at_max(&as_rd));
        }
    }
}
