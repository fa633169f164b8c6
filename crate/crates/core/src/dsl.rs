//! Text form for families.
//!
//! One expression per family. Finite families over a declared language use
//! the `fin(n=..){..}` literal with bitstrings (atom `Q0` leftmost);
//! symbolic families use the constructors `empty`, `full`, `eminimal`,
//! `points(..)`, `omegasum(..)`, `union(..)`, `guard(..; ..)`,
//! `disjoint(..)`, `limitsum(..)`, and the `tower(rank, degree)` builder,
//! which parses to the tower construction. Printing any family re-parses
//! to an equal value.

use std::fmt;

use thiserror::Error;

use crate::finite::{FiniteFamily, FiniteFamilyError};
use crate::ordinal::{Ordinal, OrdinalParseError};
use crate::symbolic::{build_tower, Guard, PointTheory, SymbolicError, SymbolicFamily};

/// A parsed family expression: explicit finite or symbolic.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedFamily {
    Finite(FiniteFamily),
    Symbolic(SymbolicFamily),
}

#[derive(Debug, Error, PartialEq)]
pub enum DslError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("bad ordinal: {0}")]
    Ordinal(#[from] OrdinalParseError),
    #[error(transparent)]
    Finite(#[from] FiniteFamilyError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> DslError {
        DslError::Syntax {
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

    fn expect(&mut self, c: u8) -> Result<(), DslError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {:?}", c as char)))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn nat(&mut self) -> Result<u64, DslError> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }

    /// Ordinal text up to a top-level ',' or ')'.
    fn ordinal(&mut self) -> Result<Ordinal, DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        while let Some(&b) = self.bytes.get(self.pos) {
            match b {
                b'(' => depth += 1,
                b')' if depth == 0 => break,
                b')' => depth -= 1,
                b',' if depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.trim().parse::<Ordinal>()?)
    }

    fn point(&mut self) -> Result<PointTheory, DslError> {
        let default = match self.peek() {
            Some(b'0') => false,
            Some(b'1') => true,
            _ => return Err(self.error("expected a point: 0* or 1* with [..] flips")),
        };
        self.pos += 1;
        self.expect(b'*')?;
        let mut flips = Vec::new();
        if self.eat(b'[') {
            loop {
                flips.push(self.nat()? as u32);
                if !self.eat(b',') {
                    break;
                }
            }
            self.expect(b']')?;
        }
        Ok(PointTheory::from_flips(default, flips))
    }

    fn bindings(&mut self) -> Result<Guard, DslError> {
        let mut pairs = Vec::new();
        loop {
            self.skip_ws();
            if self.peek() != Some(b'Q') {
                return Err(self.error("expected an atom binding Q<i>=<0|1>"));
            }
            self.pos += 1;
            let atom = self.nat()? as u32;
            self.expect(b'=')?;
            let value = match self.peek() {
                Some(b'0') => false,
                Some(b'1') => true,
                _ => return Err(self.error("expected 0 or 1")),
            };
            self.pos += 1;
            if pairs
                .iter()
                .any(|&(a, v): &(u32, bool)| a == atom && v != value)
            {
                // Contradictory guards denote the empty cylinder.
                pairs.clear();
                pairs.push((u32::MAX, true));
            }
            pairs.push((atom, value));
            if !self.eat(b',') {
                break;
            }
        }
        if pairs.iter().any(|&(a, _)| a == u32::MAX) {
            return Ok(Guard::from_pairs([(u32::MAX, true)]));
        }
        Ok(Guard::from_pairs(pairs))
    }

    fn family(&mut self) -> Result<ParsedFamily, DslError> {
        use ParsedFamily::{Finite, Symbolic};
        let word_start = self.pos;
        let head = self.word();
        match head.as_str() {
            "empty" => Ok(Symbolic(SymbolicFamily::Empty)),
            "full" => Ok(Symbolic(SymbolicFamily::Full)),
            "eminimal" => {
                let mut step = 1u32;
                let mut offset = 0u32;
                if self.eat(b'(') {
                    loop {
                        let key = self.word();
                        self.expect(b'=')?;
                        let value = self.nat()? as u32;
                        match key.as_str() {
                            "step" if value >= 1 => step = value,
                            "step" => return Err(self.error("step must be at least 1")),
                            "offset" => offset = value,
                            other => {
                                return Err(self.error(format!("unknown eminimal key {other:?}")))
                            }
                        }
                        if !self.eat(b',') {
                            break;
                        }
                    }
                    self.expect(b')')?;
                }
                Ok(Symbolic(SymbolicFamily::eminimal_spaced(step, offset)))
            }
            "fin" => {
                self.expect(b'(')?;
                let key = self.word();
                if key != "n" {
                    return Err(self.error("expected n=<atoms>"));
                }
                self.expect(b'=')?;
                let n = self.nat()? as u32;
                self.expect(b')')?;
                self.expect(b'{')?;
                let mut members = Vec::new();
                if self.peek() != Some(b'}') {
                    loop {
                        self.skip_ws();
                        let mut mask = 0u32;
                        let mut len = 0u32;
                        while let Some(&b) = self.bytes.get(self.pos) {
                            match b {
                                b'0' => {}
                                b'1' => mask |= 1 << len,
                                _ => break,
                            }
                            len += 1;
                            self.pos += 1;
                        }
                        if len != n {
                            return Err(
                                self.error(format!("bitstring length {len} does not match n={n}"))
                            );
                        }
                        members.push(mask);
                        if !self.eat(b',') {
                            break;
                        }
                    }
                }
                self.expect(b'}')?;
                Ok(Finite(FiniteFamily::new(n, members)?))
            }
            "points" => {
                self.expect(b'(')?;
                let mut points = Vec::new();
                loop {
                    points.push(self.point()?);
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                Ok(Symbolic(SymbolicFamily::fin(points)))
            }
            "omegasum" => {
                self.expect(b'(')?;
                let child = self.symbolic()?;
                self.expect(b')')?;
                Ok(Symbolic(SymbolicFamily::omega_sum(child)))
            }
            "union" => {
                self.expect(b'(')?;
                let mut children = vec![self.symbolic()?];
                while self.eat(b',') {
                    children.push(self.symbolic()?);
                }
                self.expect(b')')?;
                Ok(Symbolic(SymbolicFamily::union(children)))
            }
            "disjoint" => {
                self.expect(b'(')?;
                let mut pieces = vec![self.symbolic()?];
                while self.eat(b',') {
                    pieces.push(self.symbolic()?);
                }
                self.expect(b')')?;
                Ok(Symbolic(SymbolicFamily::disjoint(pieces)?))
            }
            "guard" => {
                self.expect(b'(')?;
                let guard = self.bindings()?;
                self.expect(b';')?;
                let child = self.symbolic()?;
                self.expect(b')')?;
                if guard.binds(u32::MAX) {
                    return Ok(Symbolic(SymbolicFamily::Empty));
                }
                Ok(Symbolic(SymbolicFamily::guard(guard, child)))
            }
            "tower" => {
                self.expect(b'(')?;
                let rank = self.ordinal()?;
                self.expect(b',')?;
                let degree = self.nat()?;
                self.expect(b')')?;
                Ok(Symbolic(build_tower(&rank, degree)?))
            }
            "limitsum" => {
                self.expect(b'(')?;
                let limit = self.ordinal()?;
                if !limit.is_limit() {
                    return Err(self.error("limitsum requires a limit ordinal"));
                }
                let mut skip = 0u64;
                let mut closed = false;
                while self.eat(b',') {
                    let key = self.word();
                    match key.as_str() {
                        "skip" => {
                            self.expect(b'=')?;
                            skip = self.nat()?;
                        }
                        "closed" => closed = true,
                        other => return Err(self.error(format!("unknown limitsum key {other:?}"))),
                    }
                }
                self.expect(b')')?;
                Ok(Symbolic(SymbolicFamily::LimitTower {
                    limit,
                    skip,
                    closed,
                }))
            }
            other => {
                self.pos = word_start;
                Err(self.error(format!("unknown family constructor {other:?}")))
            }
        }
    }

    fn symbolic(&mut self) -> Result<SymbolicFamily, DslError> {
        match self.family()? {
            ParsedFamily::Symbolic(f) => Ok(f),
            ParsedFamily::Finite(_) => {
                Err(self.error("fin(..) literals cannot nest inside symbolic families"))
            }
        }
    }
}

/// Parses a family expression.
pub fn parse_family(text: &str) -> Result<ParsedFamily, DslError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let fam = p.family()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input after family"));
    }
    Ok(fam)
}

/// Parses specifically a symbolic family.
pub fn parse_symbolic(text: &str) -> Result<SymbolicFamily, DslError> {
    match parse_family(text)? {
        ParsedFamily::Symbolic(f) => Ok(f),
        ParsedFamily::Finite(_) => Err(DslError::Syntax {
            position: 0,
            message: "expected a symbolic family, found a fin(..) literal".into(),
        }),
    }
}

impl fmt::Display for SymbolicFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SymbolicFamily::*;
        match self {
            Empty => write!(f, "empty"),
            Full => write!(f, "full"),
            EMinimal { step: 1, offset: 0 } => write!(f, "eminimal"),
            EMinimal { step, offset } => {
                write!(f, "eminimal(step={step}")?;
                if *offset != 0 {
                    write!(f, ", offset={offset}")?;
                }
                write!(f, ")")
            }
            Fin(points) => {
                write!(f, "points(")?;
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            OmegaSum(child) => write!(f, "omegasum({child})"),
            Union(children) => {
                write!(f, "union(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Guard(g, child) => write!(f, "guard({g}; {child})"),
            Disjoint(pieces) => {
                write!(f, "disjoint(")?;
                for (i, p) in pieces.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            LimitTower {
                limit,
                skip,
                closed,
            } => {
                write!(f, "limitsum({limit}")?;
                if *skip != 0 {
                    write!(f, ", skip={skip}")?;
                }
                if *closed {
                    write!(f, ", closed")?;
                }
                write!(f, ")")
            }
        }
    }
}
