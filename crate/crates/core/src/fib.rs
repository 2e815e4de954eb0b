//! Fibonacci numbers `F_0 = 1, F_1 = 2, F_n = F_{n-1} + F_{n-2}` and the
//! value maps of the Fibonacci, Fibonacci's complement and two's complement
//! numeration systems.

use std::ops::Neg;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::DomainError;
use crate::word::{Digit, Word};

/// Words up to this length are evaluated in native 128-bit arithmetic.
/// Every value of a ternary word of that length stays below `2 F_{SMALL_LEN + 1}`,
/// which is far from `i128::MAX`.
const SMALL_LEN: usize = 170;

const SMALL: [u128; SMALL_LEN + 2] = {
    let mut t = [0u128; SMALL_LEN + 2];
    t[0] = 1;
    t[1] = 2;
    let mut i = 2;
    while i < t.len() {
        t[i] = t[i - 1] + t[i - 2];
        i += 1;
    }
    t
};

static TABLE: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());

/// `F_i` for `i >= 0`, growing the shared table when needed.
pub(crate) fn fib_nonneg(i: usize) -> BigInt {
    if i < SMALL.len() {
        return BigInt::from(SMALL[i]);
    }
    {
        let table = TABLE.read().unwrap_or_else(|e| e.into_inner());
        if let Some(f) = table.get(i) {
            return f.clone();
        }
    }
    let mut table = TABLE.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.extend(SMALL.iter().map(|&f| BigInt::from(f)));
    }
    while table.len() <= i {
        let n = table.len();
        let next = &table[n - 1] + &table[n - 2];
        table.push(next);
    }
    table[i].clone()
}

/// The Fibonacci number `F_i`; `F_{-1} = 1` and `F_{-2} = 0`.
pub fn fib(i: i64) -> Result<BigInt, DomainError> {
    match i {
        -2 => Ok(BigInt::zero()),
        -1 => Ok(BigInt::one()),
        i if i >= 0 => Ok(fib_nonneg(i as usize)),
        _ => Err(DomainError::IndexOutOfRange(i)),
    }
}

/// `val_F(w) = sum w_i F_i`, defined for words over `{0, 1, 2}`; `val_F(ε) = 0`.
pub fn val_f(w: &Word) -> BigInt {
    if w.len() <= SMALL_LEN {
        let v: u128 = w
            .by_weight()
            .zip(SMALL.iter())
            .map(|(d, f)| d.value() as u128 * f)
            .sum();
        return BigInt::from(v);
    }
    w.by_weight()
        .enumerate()
        .filter(|(_, d)| *d != Digit::Zero)
        .map(|(i, d)| fib_nonneg(i) * d.value())
        .sum()
}

/// `val_Fc(w) = sum w_i F_i - w_{k-1} F_k` for a nonempty word of length `k`.
///
/// The leading digit is subtracted with weight `F_k` (not simplified), so no
/// negative index is ever needed.
pub fn val_fc(w: &Word) -> Result<BigInt, DomainError> {
    let lead = w.first().ok_or(DomainError::EmptyWord("val_Fc"))?;
    let k = w.len();
    if k <= SMALL_LEN {
        let v: u128 = w
            .by_weight()
            .zip(SMALL.iter())
            .map(|(d, f)| d.value() as u128 * f)
            .sum();
        let correction = lead.value() as u128 * SMALL[k];
        return Ok(BigInt::from(v as i128 - correction as i128));
    }
    Ok(val_f(w) - fib_nonneg(k) * lead.value())
}

/// Unsigned binary value `sum w_i 2^i`.
pub fn val_2(w: &Word) -> Result<BigInt, DomainError> {
    w.require_binary("val_2")?;
    let mut v = BigInt::zero();
    for d in w.digits() {
        v <<= 1;
        if *d == Digit::One {
            v += 1;
        }
    }
    Ok(v)
}

/// Two's complement value `sum w_i 2^i - w_{k-1} 2^k`.
pub fn val_2c(w: &Word) -> Result<BigInt, DomainError> {
    let lead = w.first().ok_or(DomainError::EmptyWord("val_2c"))?;
    let v = val_2(w)?;
    if lead == Digit::One {
        Ok(v - (BigInt::one() << w.len()))
    } else {
        Ok(v)
    }
}

/// The two's complement representation: the unique word outside
/// `00Σ* ∪ 11Σ*` with value `n`.
pub fn rep_2c(n: &BigInt) -> Word {
    // shortest k with -2^(k-1) <= n < 2^(k-1)
    let magnitude = if n.is_negative() {
        n.neg() - 1
    } else {
        n.clone()
    };
    let k = magnitude.bits() as usize + 1;
    let modulus = BigInt::one() << k;
    let residue = n.mod_floor(&modulus);
    (0..k)
        .rev()
        .map(|i| {
            if residue.bit(i as u64) {
                Digit::One
            } else {
                Digit::Zero
            }
        })
        .collect()
}

/// Digit-wise binary addition of two words of equal length, modulo `2^k`.
///
/// The same routine adds unsigned and two's complement words.
pub fn add_binary_words(u: &Word, v: &Word) -> Result<Word, DomainError> {
    u.require_binary("add_binary_words")?;
    v.require_binary("add_binary_words")?;
    if u.len() != v.len() {
        return Err(DomainError::LengthMismatch {
            left: u.to_string(),
            right: v.to_string(),
        });
    }
    let mut carry = 0u8;
    let mut out = vec![Digit::Zero; u.len()];
    for i in (0..u.len()).rev() {
        let s = u[i].value() + v[i].value() + carry;
        out[i] = Digit::from_value(s & 1).unwrap();
        carry = s >> 1;
    }
    Ok(Word::new(out))
}

/// Outcome of the three Fibonacci identities for one `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    pub k: usize,
    /// `sum_{i<2k} (-1)^i F_i F_{2k-i} = -F_{2k-2}`
    pub alternating_products: bool,
    /// `sum_{i<2k} F_i = F_{2k+1} - 2`
    pub partial_sum: bool,
    /// `sum_{i<2k} F_i^2 = F_{2k-2} F_{2k+1}`
    pub sum_of_squares: bool,
}

impl IdentityCheck {
    pub fn all_hold(&self) -> bool {
        self.alternating_products && self.partial_sum && self.sum_of_squares
    }
}

pub fn check_identities(k_max: usize) -> Vec<IdentityCheck> {
    (1..=k_max)
        .map(|k| {
            let f = fib_nonneg;
            let n = 2 * k;
            let mut alternating = BigInt::zero();
            let mut sum = BigInt::zero();
            let mut squares = BigInt::zero();
            for i in 0..n {
                let fi = f(i);
                let product = &fi * f(n - i);
                if i % 2 == 0 {
                    alternating += product;
                } else {
                    alternating -= product;
                }
                squares += &fi * &fi;
                sum += fi;
            }
            IdentityCheck {
                k,
                alternating_products: alternating == -f(n - 2),
                partial_sum: sum == f(n + 1) - 2,
                sum_of_squares: squares == f(n - 2) * f(n + 1),
            }
        })
        .collect()
}

/// Smallest `k >= 0` with `n < F_k`, i.e. the length of `rep_F(n)` for `n > 0`.
pub(crate) fn length_of_rep(n: &BigInt) -> usize {
    if let Some(k) = n
        .to_u128()
        .and_then(|small| SMALL.iter().position(|&f| small < f))
    {
        return k;
    }
    let mut k = SMALL.len();
    while *n >= fib_nonneg(k) {
        k += 1;
    }
    k
}

/// The native table entry when `i` is in range.
pub(crate) fn fib_small(i: usize) -> Option<u128> {
    SMALL.get(i).copied()
}
