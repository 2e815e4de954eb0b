use thiserror::Error;

use crate::word::Digit;

/// Violations of an operation's input domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("invalid digit {0:?}: expected one of '0', '1', '2'")]
    InvalidDigit(char),
    #[error("Fibonacci index {0} is below -2")]
    IndexOutOfRange(i64),
    #[error("{0} is undefined on the empty word")]
    EmptyWord(&'static str),
    #[error("{op} expects a binary word, got {word:?}")]
    NonBinary { op: &'static str, word: String },
    #[error("{op} expects a nonnegative integer, got {value}")]
    Negative { op: &'static str, value: String },
    #[error("{word:?} is not in the language of canonical Fibonacci's complement words")]
    NotCanonical { word: String },
    #[error("{word:?} has even length; padding is only defined on odd-length words")]
    EvenLength { word: String },
    #[error("words {left:?} and {right:?} differ in length")]
    LengthMismatch { left: String, right: String },
    #[error("enumeration bound must be odd, got {0}")]
    EvenBound(usize),
    #[error("exhaustive check limited to length {limit}, got {requested}")]
    BoundTooLarge { limit: usize, requested: usize },
}

/// Construction and deserialization failures for Mealy machines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("duplicate transition from state {state:?} on input {input}")]
    Nondeterministic { state: String, input: Digit },
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("digit {digit} is not in the {which} alphabet")]
    DigitNotInAlphabet { digit: Digit, which: &'static str },
    #[error("transition output {0:?} is longer than one digit")]
    OutputTooLong(String),
    #[error("no final output declared for state {0:?}")]
    MissingFinalOutput(String),
    #[error("invalid machine document at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Failures while feeding a word to a machine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("no transition from state {state:?} on input {input} at position {position}")]
    MissingTransition {
        position: usize,
        state: String,
        input: Digit,
    },
}

/// Failures of the adder reconstruction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("theta value {theta} outside 0..=7 reached from class {from} on input {input}")]
    ThetaOutOfRange {
        from: String,
        input: Digit,
        theta: i64,
    },
    #[error("expected {expected} classes, explored {found}")]
    StateCount { expected: usize, found: usize },
    #[error("{count} candidate (digit, triple) pairs extend {word:?}; exactly one was expected")]
    Ambiguous { word: String, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Machine(#[from] MachineError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
