//! Zeckendorf representations of the nonnegative integers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::DomainError;
use crate::fib::{fib_nonneg, fib_small, length_of_rep, val_f};
use crate::word::{Digit, Word};

/// A binary word with no factor `11` and no leading `0`. The empty word
/// represents zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZeckWord(Word);

impl ZeckWord {
    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn value(&self) -> BigInt {
        val_f(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Word> for ZeckWord {
    type Error = DomainError;

    fn try_from(word: Word) -> Result<Self, Self::Error> {
        if is_zeckendorf(&word)? {
            Ok(ZeckWord(word))
        } else {
            Err(DomainError::NotCanonical {
                word: word.to_string(),
            })
        }
    }
}

impl fmt::Display for ZeckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialEq<Word> for ZeckWord {
    fn eq(&self, other: &Word) -> bool {
        self.0 == *other
    }
}

/// The Zeckendorf representation of `n`, computed greedily.
pub fn rep_f(n: impl Into<BigInt>) -> Result<ZeckWord, DomainError> {
    let n = n.into();
    if n.is_negative() {
        return Err(DomainError::Negative {
            op: "rep_F",
            value: n.to_string(),
        });
    }
    Ok(ZeckWord(greedy(&n)))
}

fn greedy(n: &BigInt) -> Word {
    let k = length_of_rep(n);
    let mut digits = Vec::with_capacity(k);
    match (n.to_u128(), fib_small(k)) {
        (Some(mut rest), Some(_)) => {
            for i in (0..k).rev() {
                let f = fib_small(i).unwrap();
                if rest >= f {
                    rest -= f;
                    digits.push(Digit::One);
                } else {
                    digits.push(Digit::Zero);
                }
            }
        }
        _ => {
            let mut rest = n.clone();
            for i in (0..k).rev() {
                let f = fib_nonneg(i);
                if rest >= f {
                    rest -= f;
                    digits.push(Digit::One);
                } else {
                    digits.push(Digit::Zero);
                }
            }
        }
    }
    Word::new(digits)
}

pub fn is_zeckendorf(w: &Word) -> Result<bool, DomainError> {
    w.require_binary("is_zeckendorf")?;
    Ok(w.first() != Some(Digit::Zero) && !w.has_factor_11())
}

/// Radix order: shorter words first, then lexicographic.
pub fn cmp_radix(u: &Word, v: &Word) -> Ordering {
    u.len()
        .cmp(&v.len())
        .then_with(|| u.digits().cmp(v.digits()))
}

/// The canonical word with the same Fibonacci value as `w`.
pub fn normalize_f(w: &Word) -> ZeckWord {
    ZeckWord(greedy(&val_f(w)))
}
