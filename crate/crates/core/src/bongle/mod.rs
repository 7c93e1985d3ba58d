//! Bongles: cyclic sequences of one-crossing charms, each crossing forming a
//! monogon around a stake.
//!
//! A charm is written as two characters, the side of its monogon (`O`utie or
//! `I`nnie) followed by the pattern its crossing contributes to the traversal
//! string (`0` for `ou`, `1` for `uo`). `"O0 I0 O0 I0"` is the balanced
//! alternating 4-bongle.

mod hyperbolicity;
mod parse;
mod symmetry;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hyperbolicity::{
    classify_nonalternating, decide_hyperbolic, HyperbolicityReason, HyperbolicityVerdict, NonAltType,
};
pub use parse::{parse_bongle, ParseError};
pub use symmetry::{
    are_equivalent, canonical_form, enumerate_bongles, enumerate_bongles_with_cap, EnumerationFilter,
    Symmetry, DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BongleError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("a bongle needs at least 2 charms, got {0}")]
    TooShort(usize),
    #[error("bongle is alternating")]
    AlternatingInput,
    #[error("bongle is not alternating")]
    NonAlternatingInput,
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Which side of the bracelet a monogon sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "O")]
    Outie,
    #[serde(rename = "I")]
    Innie,
}

impl Side {
    pub fn swapped(self) -> Side {
        match self {
            Side::Outie => Side::Innie,
            Side::Innie => Side::Outie,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::Outie => 'O',
            Side::Innie => 'I',
        }
    }
}

/// Crossing letter seen while tracing the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Over,
    Under,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::Over => 'o',
            Letter::Under => 'u',
        }
    }
}

/// The two traversal letters a charm's crossing contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    /// `ou`, digit `0`.
    OverUnder,
    /// `uo`, digit `1`.
    UnderOver,
}

impl Pattern {
    pub fn flipped(self) -> Pattern {
        match self {
            Pattern::OverUnder => Pattern::UnderOver,
            Pattern::UnderOver => Pattern::OverUnder,
        }
    }

    pub fn digit(self) -> u8 {
        match self {
            Pattern::OverUnder => 0,
            Pattern::UnderOver => 1,
        }
    }

    pub fn from_digit(d: u8) -> Option<Pattern> {
        match d {
            0 => Some(Pattern::OverUnder),
            1 => Some(Pattern::UnderOver),
            _ => None,
        }
    }

    pub fn letters(self) -> [Letter; 2] {
        match self {
            Pattern::OverUnder => [Letter::Over, Letter::Under],
            Pattern::UnderOver => [Letter::Under, Letter::Over],
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.digit())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        Pattern::from_digit(v).ok_or_else(|| serde::de::Error::custom(format!("pattern must be 0 or 1, got {v}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Charm {
    pub side: Side,
    pub pattern: Pattern,
}

impl Charm {
    pub const fn new(side: Side, pattern: Pattern) -> Charm {
        Charm { side, pattern }
    }

    /// Position in the canonical token order `O0 < O1 < I0 < I1`.
    pub fn rank(self) -> u8 {
        (self.side as u8) * 2 + self.pattern.digit()
    }

    pub fn from_rank(rank: u8) -> Charm {
        let side = if rank & 2 == 0 { Side::Outie } else { Side::Innie };
        let pattern = if rank & 1 == 0 {
            Pattern::OverUnder
        } else {
            Pattern::UnderOver
        };
        Charm { side, pattern }
    }
}

impl fmt::Display for Charm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.pattern.digit())
    }
}

/// Whether a non-alternating junction repeats `u` or `o`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepeatedLetter {
    #[serde(rename = "uu")]
    Uu,
    #[serde(rename = "oo")]
    Oo,
}

/// Two consecutive charms joined by a strand whose traversal letters repeat.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NonAltPair {
    /// Junction `j` sits between charm `j` and charm `j + 1 (mod n)`.
    pub junction: usize,
    pub left: usize,
    pub right: usize,
    pub repeated: RepeatedLetter,
}

/// A cyclic sequence of at least two charms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BongleRepr", into = "BongleRepr")]
pub struct Bongle {
    charms: Vec<Charm>,
}

#[derive(Serialize, Deserialize)]
struct BongleRepr {
    charms: Vec<Charm>,
}

impl TryFrom<BongleRepr> for Bongle {
    type Error = BongleError;
    fn try_from(r: BongleRepr) -> Result<Self, Self::Error> {
        Bongle::new(r.charms)
    }
}

impl From<Bongle> for BongleRepr {
    fn from(b: Bongle) -> Self {
        BongleRepr { charms: b.charms }
    }
}

impl Bongle {
    pub fn new(charms: Vec<Charm>) -> Result<Bongle, BongleError> {
        if charms.len() < 2 {
            return Err(BongleError::TooShort(charms.len()));
        }
        Ok(Bongle { charms })
    }

    /// Alternating bongle with the given sides and every pattern `ou`.
    pub fn alternating(sides: &[Side]) -> Result<Bongle, BongleError> {
        Bongle::new(sides.iter().map(|&s| Charm::new(s, Pattern::OverUnder)).collect())
    }

    pub fn charms(&self) -> &[Charm] {
        &self.charms
    }

    pub fn len(&self) -> usize {
        self.charms.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.charms.is_empty()
    }

    pub fn innie_count(&self) -> usize {
        self.charms.iter().filter(|c| c.side == Side::Innie).count()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.innie_count() == self.len()
    }

    /// Swaps inside and outside when more than half the monogons are innies.
    pub fn normalize_orientation(&self) -> Bongle {
        if 2 * self.innie_count() > self.len() {
            self.with_sides_swapped()
        } else {
            self.clone()
        }
    }

    pub fn with_sides_swapped(&self) -> Bongle {
        Bongle {
            charms: self
                .charms
                .iter()
                .map(|c| Charm::new(c.side.swapped(), c.pattern))
                .collect(),
        }
    }

    pub fn traversal_letters(&self) -> Vec<Letter> {
        self.charms.iter().flat_map(|c| c.pattern.letters()).collect()
    }

    /// The cyclic `o`/`u` string read off by tracing the knot once.
    pub fn traversal_string(&self) -> String {
        self.traversal_letters().into_iter().map(Letter::as_char).collect()
    }

    pub fn is_alternating(&self) -> bool {
        let first = self.charms[0].pattern;
        self.charms.iter().all(|c| c.pattern == first)
    }

    pub fn non_alternating_pairs(&self) -> Vec<NonAltPair> {
        let n = self.len();
        (0..n)
            .filter_map(|j| {
                let left = self.charms[j].pattern.letters()[1];
                let right = self.charms[(j + 1) % n].pattern.letters()[0];
                (left == right).then_some(NonAltPair {
                    junction: j,
                    left: j,
                    right: (j + 1) % n,
                    repeated: match left {
                        Letter::Under => RepeatedLetter::Uu,
                        Letter::Over => RepeatedLetter::Oo,
                    },
                })
            })
            .collect()
    }

    /// Sizes of the two equatorial edge classes, `(n + k, 2n - k)` for an
    /// alternating bongle with `k` innies in its current orientation.
    pub fn edge_class_counts(&self) -> Result<(usize, usize), BongleError> {
        if !self.is_alternating() {
            return Err(BongleError::NonAlternatingInput);
        }
        let (n, k) = (self.len(), self.innie_count());
        Ok((n + k, 2 * n - k))
    }
}

impl fmt::Display for Bongle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.charms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Bongle {
    type Err = BongleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_bongle(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Bongle {
        s.parse().unwrap()
    }

    #[test]
    fn traversal_strings() {
        assert_eq!(b("O0 O0 O0").traversal_string(), "ououou");
        assert_eq!(b("O0 O1 O0 O1").traversal_string(), "ouuoouuo");
        assert_eq!(b("I1 I1").traversal_string(), "uouo");
    }

    #[test]
    fn alternation() {
        assert!(b("O0 O0 O0").is_alternating());
        assert!(!b("O0 O1 O0 O1").is_alternating());
        assert!(b("I1 O1 I1 O1 I1 O1").is_alternating());
    }

    #[test]
    fn innies_and_orientation() {
        let x = b("I0 I0 I0");
        assert_eq!(x.innie_count(), 3);
        assert_eq!(x.normalize_orientation(), b("O0 O0 O0"));
        let y = b("O0 I0 O0 I0");
        assert_eq!(y.innie_count(), 2);
        assert_eq!(y.normalize_orientation(), y);
        let z = b("O0 I0 I0");
        let zn = z.normalize_orientation();
        assert_eq!(zn, b("I0 O0 O0"));
        assert_eq!(zn.innie_count(), 1);
    }

    #[test]
    fn pairs() {
        assert!(b("O0 O0 O0").non_alternating_pairs().is_empty());
        let p = b("O0 O1 O0 O1").non_alternating_pairs();
        assert_eq!(p.len(), 4);
        assert_eq!(p.iter().filter(|q| q.repeated == RepeatedLetter::Uu).count(), 2);
        let p = b("O0 I1 O0").non_alternating_pairs();
        assert_eq!(
            p,
            vec![
                NonAltPair { junction: 0, left: 0, right: 1, repeated: RepeatedLetter::Uu },
                NonAltPair { junction: 1, left: 1, right: 2, repeated: RepeatedLetter::Oo },
            ]
        );
    }

    #[test]
    fn class_counts() {
        assert_eq!(b("O0 I0 O0 I0 O0 I0").edge_class_counts().unwrap(), (9, 9));
        assert_eq!(b("O0 O0 O0").edge_class_counts().unwrap(), (3, 6));
        assert_eq!(b("O0 I0 O0 I0 O0").edge_class_counts().unwrap(), (7, 8));
        assert_eq!(b("O0 O1 O0").edge_class_counts(), Err(BongleError::NonAlternatingInput));
    }

    #[test]
    fn json_shape() {
        let x = b("O0 I1");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"charms":[{"side":"O","pattern":0},{"side":"I","pattern":1}]}"#);
        assert_eq!(serde_json::from_str::<Bongle>(&s).unwrap(), x);
        assert!(serde_json::from_str::<Bongle>(r#"{"charms":[{"side":"O","pattern":0}]}"#).is_err());
        assert!(serde_json::from_str::<Bongle>(r#"{"charms":[{"side":"O","pattern":2},{"side":"O","pattern":0}]}"#).is_err());
    }
}
