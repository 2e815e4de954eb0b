//! The Fibonacci's complement numeration system for `ℤ` and `ℤ²`.
//!
//! Canonical words form the language
//! `D = Σ(ΣΣ)* \ (Σ*11Σ* ∪ 000Σ* ∪ 101Σ*)`. Padding uses the neutral
//! prefixes `00` and `10`, which leave the value unchanged.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::DomainError;
use crate::fib::{fib_nonneg, length_of_rep, val_fc};
use crate::word::{w, Digit, Word};
use crate::zeckendorf::{cmp_radix, rep_f};

/// A word of the language `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FcWord(Word);

impl FcWord {
    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn value(&self) -> BigInt {
        val_fc(&self.0).expect("canonical words are nonempty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Word> for FcWord {
    type Error = DomainError;

    fn try_from(word: Word) -> Result<Self, Self::Error> {
        if is_canonical_fc(&word)? {
            Ok(FcWord(word))
        } else {
            Err(DomainError::NotCanonical {
                word: word.to_string(),
            })
        }
    }
}

impl fmt::Display for FcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq<Word> for FcWord {
    fn eq(&self, other: &Word) -> bool {
        self.0 == *other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NeutralPrefix {
    /// `00`, for words starting with `0`.
    Zeros,
    /// `10`, for words starting with `1`.
    OneZero,
}

impl NeutralPrefix {
    pub fn as_word(self) -> Word {
        match self {
            NeutralPrefix::Zeros => w("00"),
            NeutralPrefix::OneZero => w("10"),
        }
    }
}

impl fmt::Display for NeutralPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeutralPrefix::Zeros => "00",
            NeutralPrefix::OneZero => "10",
        })
    }
}

pub fn is_canonical_fc(word: &Word) -> Result<bool, DomainError> {
    word.require_binary("is_canonical_Fc")?;
    Ok(word.len() % 2 == 1
        && !word.has_factor_11()
        && !word.starts_with(&w("000"))
        && !word.starts_with(&w("101")))
}

/// The unique word of `D` with complement value `n`.
pub fn rep_fc(n: impl Into<BigInt>) -> FcWord {
    let n = n.into();
    if n == -BigInt::one() {
        return FcWord(w("1"));
    }
    if !n.is_negative() {
        let z = rep_f(n).expect("nonnegative").into_word();
        let pad = if z.len() % 2 == 0 { "0" } else { "00" };
        return FcWord(z.prepend(&w(pad)));
    }
    // n < -1: the block -F_{2k-1} <= n < -F_{2k-3} holds exactly the words
    // of length 2k + 1 starting with 1.
    let magnitude = -&n;
    let first_ge = length_of_rep(&(&magnitude - 1u32));
    let k = (first_ge + 2) / 2;
    let rest = fib_nonneg(2 * k - 1) + &n;
    let tail = rep_f(rest)
        .expect("block offset is nonnegative")
        .into_word();
    let zeros = Word::repeat(Digit::Zero, 2 * k - tail.len());
    FcWord(w("1").concat(&zeros).concat(&tail))
}

pub fn neutral_prefix(word: &Word) -> Result<NeutralPrefix, DomainError> {
    match word.first() {
        None => Err(DomainError::EmptyWord("neutral_prefix")),
        Some(Digit::Zero) => Ok(NeutralPrefix::Zeros),
        Some(_) => Ok(NeutralPrefix::OneZero),
    }
}

/// Pads odd-length binary words to a common length by repeating each
/// word's neutral prefix.
pub fn pad_words(words: &[&Word]) -> Result<Vec<Word>, DomainError> {
    for word in words {
        word.require_binary("pad")?;
        if word.is_empty() {
            return Err(DomainError::EmptyWord("pad"));
        }
        if word.len() % 2 == 0 {
            return Err(DomainError::EvenLength {
                word: word.to_string(),
            });
        }
    }
    let k = words.iter().map(|u| u.len()).max().unwrap_or(0);
    words
        .iter()
        .map(|word| {
            let prefix = neutral_prefix(word)?.as_word();
            let mut out = Word::empty();
            for _ in 0..(k - word.len()) / 2 {
                out = out.concat(&prefix);
            }
            Ok(out.concat(word))
        })
        .collect()
}

/// Pads two canonical words to the same length.
pub fn pad_pair(u: &Word, v: &Word) -> Result<(Word, Word), DomainError> {
    for word in [u, v] {
        if word.len() % 2 == 0 {
            return Err(DomainError::EvenLength {
                word: word.to_string(),
            });
        }
        if !is_canonical_fc(word)? {
            return Err(DomainError::NotCanonical {
                word: word.to_string(),
            });
        }
    }
    let mut padded = pad_words(&[u, v])?.into_iter();
    Ok((padded.next().unwrap(), padded.next().unwrap()))
}

/// Representation of a point of `ℤ²`: both coordinates padded to equal length.
pub fn rep_fc_vec2(n: (impl Into<BigInt>, impl Into<BigInt>)) -> (Word, Word) {
    let u = rep_fc(n.0).into_word();
    let v = rep_fc(n.1).into_word();
    pad_pair(&u, &v).expect("canonical words pad")
}

/// Representation of a point of `ℤ^d`, padded component-wise to the longest word.
pub fn rep_fc_vec(point: &[BigInt]) -> Vec<Word> {
    let words: Vec<Word> = point
        .iter()
        .map(|n| rep_fc(n.clone()).into_word())
        .collect();
    let refs: Vec<&Word> = words.iter().collect();
    pad_words(&refs).expect("canonical words pad")
}

/// Digit-wise sum of the padded pair; a word over `{0, 1, 2}`.
pub fn sum_words(u: &Word, v: &Word) -> Result<Word, DomainError> {
    let (pu, pv) = pad_pair(u, v)?;
    Ok(pu
        .digits()
        .iter()
        .zip(pv.digits())
        .map(|(a, b)| Digit::from_value(a.value() + b.value()).unwrap())
        .collect())
}

/// The canonical word with the same complement value. Accepts any nonempty
/// word over `{0, 1, 2}`.
pub fn canonicalize_fc(word: &Word) -> Result<FcWord, DomainError> {
    Ok(rep_fc(val_fc(word)?))
}

/// Reversed-radix order: longer words first, then lexicographic.
pub fn cmp_rev(u: &Word, v: &Word) -> Ordering {
    v.len()
        .cmp(&u.len())
        .then_with(|| u.digits().cmp(v.digits()))
}

/// The total order `≺`: words starting with `1` (in reversed-radix order)
/// precede words starting with `0` (in radix order).
pub fn cmp_prec(u: &Word, v: &Word) -> Result<Ordering, DomainError> {
    let (a, b) = match (u.first(), v.first()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(DomainError::EmptyWord("cmp_prec")),
    };
    Ok(match (a == Digit::Zero, b == Digit::Zero) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        (true, true) => cmp_radix(u, v),
        (false, false) => cmp_rev(u, v),
    })
}

/// Every word of `D` of length at most `max_len`, sorted by `≺`.
pub fn enumerate_d(max_len: usize) -> Result<Vec<FcWord>, DomainError> {
    if max_len.is_multiple_of(2) {
        return Err(DomainError::EvenBound(max_len));
    }
    let mut out = Vec::new();
    let mut stack = vec![Word::empty()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() % 2 == 1 && is_canonical_fc(&prefix).unwrap() {
            out.push(FcWord(prefix.clone()));
        }
        if prefix.len() == max_len {
            continue;
        }
        for d in Digit::BINARY {
            if d == Digit::One && prefix.digits().last() == Some(&Digit::One) {
                continue;
            }
            let mut next = prefix.clone();
            next.push(d);
            stack.push(next);
        }
    }
    out.sort_by(|a, b| cmp_prec(a.as_word(), b.as_word()).unwrap());
    Ok(out)
}
