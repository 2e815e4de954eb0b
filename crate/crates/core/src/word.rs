//! Digits and finite words.
//!
//! Words are stored most significant digit first: the digit at position
//! `j` of a word of length `k` carries weight index `k - 1 - j`. This is
//! the reading order of the left-to-right transducers.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::DomainError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Digit {
    Zero = 0,
    One = 1,
    Two = 2,
}

impl Digit {
    pub const BINARY: [Digit; 2] = [Digit::Zero, Digit::One];
    pub const TERNARY: [Digit; 3] = [Digit::Zero, Digit::One, Digit::Two];

    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn from_value(v: u8) -> Option<Digit> {
        match v {
            0 => Some(Digit::Zero),
            1 => Some(Digit::One),
            2 => Some(Digit::Two),
            _ => None,
        }
    }

    pub fn to_char(self) -> char {
        (b'0' + self.value()) as char
    }

    pub fn is_binary(self) -> bool {
        self != Digit::Two
    }
}

impl TryFrom<char> for Digit {
    type Error = DomainError;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        match c {
            '0' => Ok(Digit::Zero),
            '1' => Ok(Digit::One),
            '2' => Ok(Digit::Two),
            _ => Err(DomainError::InvalidDigit(c)),
        }
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl Serialize for Digit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Digit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Digit::try_from(c).map_err(serde::de::Error::custom),
            _ => Err(serde::de::Error::custom(format!(
                "expected a single digit, got {s:?}"
            ))),
        }
    }
}

/// A finite word over `{0, 1, 2}`; the empty word is allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Digit>);

impl Word {
    pub fn new(digits: Vec<Digit>) -> Self {
        Word(digits)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `digit` repeated `n` times.
    pub fn repeat(digit: Digit, n: usize) -> Self {
        Word(vec![digit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[Digit] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<Digit> {
        self.0
    }

    pub fn first(&self) -> Option<Digit> {
        self.0.first().copied()
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|d| d.is_binary())
    }

    /// Digits from least to most significant, i.e. `w_0, w_1, ...`.
    pub fn by_weight(&self) -> impl Iterator<Item = Digit> + '_ {
        self.0.iter().rev().copied()
    }

    pub fn push(&mut self, d: Digit) {
        self.0.push(d);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, prefix: &Word) -> Word {
        prefix.concat(self)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// True if the word contains two consecutive ones.
    pub fn has_factor_11(&self) -> bool {
        self.0
            .windows(2)
            .any(|p| p[0] == Digit::One && p[1] == Digit::One)
    }

    pub(crate) fn require_binary(&self, op: &'static str) -> Result<(), DomainError> {
        if self.is_binary() {
            Ok(())
        } else {
            Err(DomainError::NonBinary {
                op,
                word: self.to_string(),
            })
        }
    }

    /// All words of length `len` over `{0, .., radix-1}` in lexicographic order.
    pub fn all_of_length(radix: u8, len: usize) -> impl Iterator<Item = Word> {
        assert!((1..=3).contains(&radix), "radix must be 1, 2 or 3");
        let count = (radix as u64).pow(len as u32);
        (0..count).map(move |mut index| {
            let mut digits = vec![Digit::Zero; len];
            for slot in digits.iter_mut().rev() {
                *slot = Digit::from_value((index % radix as u64) as u8).unwrap();
                index /= radix as u64;
            }
            Word(digits)
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(radix: u8, max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(move |len| Word::all_of_length(radix, len))
    }
}

impl Index<usize> for Word {
    type Output = Digit;

    fn index(&self, i: usize) -> &Digit {
        &self.0[i]
    }
}

impl From<Vec<Digit>> for Word {
    fn from(v: Vec<Digit>) -> Self {
        Word(v)
    }
}

impl FromIterator<Digit> for Word {
    fn from_iter<I: IntoIterator<Item = Digit>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(Digit::try_from).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word literal, panicking on invalid digits. Intended for constants and tests.
pub fn w(s: &str) -> Word {
    s.parse()
        .unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let word: Word = "2010202".parse().unwrap();
        assert_eq!(word.len(), 7);
        assert_eq!(word[0], Digit::Two);
        assert_eq!(word.to_string(), "2010202");
        assert_eq!(Word::empty().to_string(), "");
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn rejects_other_characters() {
        assert_eq!("013".parse::<Word>(), Err(DomainError::InvalidDigit('3')));
        assert!("1 0".parse::<Word>().is_err());
    }

    #[test]
    fn weight_order_is_reversed() {
        let digits: Vec<u8> = w("210").by_weight().map(Digit::value).collect();
        assert_eq!(digits, vec![0, 1, 2]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word::all_of_length(3, 0).count(), 1);
        assert_eq!(
            Word::all_up_to(3, 10).filter(|u| !u.is_empty()).count(),
            88572
        );
        let len2: Vec<String> = Word::all_of_length(2, 2).map(|u| u.to_string()).collect();
        assert_eq!(len2, ["00", "01", "10", "11"]);
    }

    #[test]
    fn factor_11() {
        assert!(w("0110").has_factor_11());
        assert!(!w("10101").has_factor_11());
        assert!(!w("121").has_factor_11());
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&w("101")).unwrap();
        assert_eq!(json, "\"101\"");
        let back: Word = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w("101"));
        assert!(serde_json::from_str::<Digit>("\"12\"").is_err());
    }
}
