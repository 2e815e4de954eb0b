//! The Berstel adder `ℬ`, its variant `𝒯`, and addition pipelines built on them.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::complement::{canonicalize_fc, rep_fc, sum_words, FcWord};
use crate::derivation::StateTriple;
use crate::error::{DomainError, Error};
use crate::fib::{val_f, val_fc};
use crate::mealy::{MachineSpec, MealyMachine, Step, TransitionSpec};
use crate::word::{Digit, Word};
use crate::zeckendorf::{normalize_f, rep_f, ZeckWord};

/// A state `s.θ` of the Berstel adder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdderState {
    pub s: StateTriple,
    pub theta: u8,
}

impl AdderState {
    /// The ten states, in the customary order.
    pub const Q: [AdderState; 10] = [
        AdderState::new(StateTriple::T000, 0),
        AdderState::new(StateTriple::T001, 1),
        AdderState::new(StateTriple::T010, 3),
        AdderState::new(StateTriple::T100, 5),
        AdderState::new(StateTriple::T101, 6),
        AdderState::new(StateTriple::T000, 1),
        AdderState::new(StateTriple::T001, 2),
        AdderState::new(StateTriple::T010, 4),
        AdderState::new(StateTriple::T100, 6),
        AdderState::new(StateTriple::T101, 7),
    ];

    pub const fn new(s: StateTriple, theta: u8) -> Self {
        AdderState { s, theta }
    }

    /// The final output of the state.
    pub fn phi(self) -> Word {
        self.s.word()
    }
}

impl fmt::Display for AdderState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.s, self.theta)
    }
}

impl FromStr for AdderState {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parsed = text.split_once('.').and_then(|(s, theta)| {
            let s = StateTriple::from_word(&s.parse().ok()?)?;
            let theta = theta.parse().ok()?;
            Some(AdderState { s, theta })
        });
        match parsed {
            Some(state) if AdderState::Q.contains(&state) => Ok(state),
            _ => Err(format!("{text:?} is not a state of the Berstel adder")),
        }
    }
}

pub const START: &str = "start";

const BERSTEL_TABLE: [(&str, [(&str, &str); 3]); 10] = [
    ("000.0", [("0", "000.0"), ("0", "001.2"), ("0", "010.4")]),
    ("001.2", [("0", "010.3"), ("0", "100.5"), ("0", "101.7")]),
    ("010.4", [("0", "101.6"), ("1", "000.0"), ("1", "001.2")]),
    ("010.3", [("0", "100.5"), ("0", "101.7"), ("1", "000.1")]),
    ("100.5", [("1", "000.0"), ("1", "001.2"), ("1", "010.4")]),
    ("101.7", [("1", "010.3"), ("1", "100.5"), ("1", "101.7")]),
    ("101.6", [("1", "001.2"), ("1", "010.4"), ("1", "100.6")]),
    ("000.1", [("0", "001.1"), ("0", "010.3"), ("0", "100.5")]),
    ("100.6", [("1", "001.1"), ("1", "010.3"), ("1", "100.5")]),
    ("001.1", [("0", "001.2"), ("0", "010.4"), ("0", "100.6")]),
];

/// Transition table of `ℬ` as a machine description.
pub fn berstel_spec() -> MachineSpec {
    let mut transitions = Vec::new();
    for (from, row) in BERSTEL_TABLE {
        for (a, (output, to)) in Digit::TERNARY.into_iter().zip(row) {
            transitions.push(TransitionSpec::new(from, a, output.parse().unwrap(), to));
        }
    }
    MachineSpec {
        states: AdderState::Q.iter().map(|q| q.to_string()).collect(),
        initial: "000.0".into(),
        input_alphabet: Digit::TERNARY.to_vec(),
        output_alphabet: Digit::BINARY.to_vec(),
        transitions,
        phi: AdderState::Q
            .iter()
            .map(|q| (q.to_string(), q.phi()))
            .collect(),
    }
}

/// `ℬ` with a fresh initial state `start` whose transitions output nothing.
pub fn modified_spec() -> MachineSpec {
    let mut spec = berstel_spec();
    spec.states.insert(0, START.into());
    spec.initial = START.into();
    for (a, to) in Digit::TERNARY.into_iter().zip(["000.0", "101.7", "100.6"]) {
        spec.transitions
            .push(TransitionSpec::new(START, a, Word::empty(), to));
    }
    spec.phi.insert(START.into(), "000".parse().unwrap());
    spec
}

/// The Berstel adder `ℬ`.
pub fn berstel() -> &'static MealyMachine {
    static B: OnceLock<MealyMachine> = OnceLock::new();
    B.get_or_init(|| MealyMachine::build(&berstel_spec()).expect("valid transition table"))
}

/// The modified adder `𝒯`.
pub fn modified() -> &'static MealyMachine {
    static T: OnceLock<MealyMachine> = OnceLock::new();
    T.get_or_init(|| MealyMachine::build(&modified_spec()).expect("valid transition table"))
}

/// Every intermediate word of an addition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Addition {
    pub left: Word,
    pub right: Word,
    pub sum: Word,
    pub steps: Vec<Step>,
    pub output: Word,
    pub final_output: Word,
    pub result: Word,
    pub value: BigInt,
}

impl Addition {
    /// `output · final_output`, the raw transducer result.
    pub fn raw(&self) -> Word {
        self.output.concat(&self.final_output)
    }
}

fn digitwise(u: &Word, v: &Word) -> Word {
    u.digits()
        .iter()
        .zip(v.digits())
        .map(|(a, b)| Digit::from_value(a.value() + b.value()).expect("binary operands"))
        .collect()
}

/// Zeckendorf addition through `machine`, keeping every intermediate word.
pub fn add_f_detailed(
    machine: &MealyMachine,
    m: impl Into<BigInt>,
    n: impl Into<BigInt>,
) -> Result<Addition, Error> {
    let (m, n) = (m.into(), n.into());
    let u = rep_f(m)?.into_word();
    let v = rep_f(n)?.into_word();
    let k = u.len().max(v.len());
    let left = u.prepend(&Word::repeat(Digit::Zero, k - u.len()));
    let right = v.prepend(&Word::repeat(Digit::Zero, k - v.len()));
    let sum = digitwise(&left, &right);
    let steps = machine.trace(&sum)?;
    let run = machine.run(&sum)?;
    let raw = run.concatenated();
    let value = val_f(&raw);
    let result = normalize_f(&raw).into_word();
    Ok(Addition {
        left,
        right,
        sum,
        steps,
        output: run.output,
        final_output: run.final_output,
        result,
        value,
    })
}

/// Fibonacci's complement addition through `machine`.
pub fn add_fc_detailed(
    machine: &MealyMachine,
    m: impl Into<BigInt>,
    n: impl Into<BigInt>,
) -> Result<Addition, Error> {
    let u = rep_fc(m).into_word();
    let v = rep_fc(n).into_word();
    let (left, right) = crate::complement::pad_pair(&u, &v)?;
    let sum = digitwise(&left, &right);
    let steps = machine.trace(&sum)?;
    let run = machine.run(&sum)?;
    let raw = run.concatenated();
    let value = val_fc(&raw)?;
    let result = canonicalize_fc(&raw)?.into_word();
    Ok(Addition {
        left,
        right,
        sum,
        steps,
        output: run.output,
        final_output: run.final_output,
        result,
        value,
    })
}

/// `m + n` with `m, n ≥ 0`: digit-wise sum of the zero-padded Zeckendorf
/// words, fed to `machine`, then normalized.
pub fn add_f_with(
    machine: &MealyMachine,
    m: impl Into<BigInt>,
    n: impl Into<BigInt>,
) -> Result<ZeckWord, Error> {
    let (m, n) = (m.into(), n.into());
    for x in [&m, &n] {
        if x.is_negative() {
            return Err(DomainError::Negative {
                op: "add_F",
                value: x.to_string(),
            }
            .into());
        }
    }
    let u = rep_f(m)?.into_word();
    let v = rep_f(n)?.into_word();
    let k = u.len().max(v.len());
    let sum = digitwise(
        &u.prepend(&Word::repeat(Digit::Zero, k - u.len())),
        &v.prepend(&Word::repeat(Digit::Zero, k - v.len())),
    );
    Ok(normalize_f(&machine.run_with_final(&sum)?))
}

/// `m + n` over `ℤ` through `machine`.
pub fn add_fc_with(
    machine: &MealyMachine,
    m: impl Into<BigInt>,
    n: impl Into<BigInt>,
) -> Result<FcWord, Error> {
    let sum = sum_words(rep_fc(m).as_word(), rep_fc(n).as_word())?;
    Ok(canonicalize_fc(&machine.run_with_final(&sum)?)?)
}

/// Zeckendorf representation of `m + n`, computed by `ℬ`.
pub fn add_f(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<ZeckWord, DomainError> {
    match add_f_with(berstel(), m, n) {
        Ok(z) => Ok(z),
        Err(Error::Domain(e)) => Err(e),
        Err(e) => unreachable!("total machine failed: {e}"),
    }
}

/// Fibonacci's complement representation of `m + n`, computed by `𝒯`.
pub fn add_fc(m: impl Into<BigInt>, n: impl Into<BigInt>) -> FcWord {
    add_fc_with(modified(), m, n).expect("canonical operands and a total machine")
}

/// Fibonacci's complement representation of `m − n`.
pub fn sub_fc(m: impl Into<BigInt>, n: impl Into<BigInt>) -> FcWord {
    let n: BigInt = n.into();
    add_fc(m, -n)
}

/// One line of the table of `ℬ` and `𝒯` on short ternary words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub u: Word,
    pub val_f: BigInt,
    pub b_output: Word,
    pub b_final: Word,
    pub b_val: BigInt,
    pub val_fc: BigInt,
    pub t_output: Word,
    pub t_final: Word,
    pub t_val: BigInt,
}

const EPSILON: &str = "ε";

fn show(word: &Word) -> String {
    if word.is_empty() {
        EPSILON.to_owned()
    } else {
        word.to_string()
    }
}

impl TableRow {
    pub fn b_cell(&self) -> String {
        format!("{}·{}", show(&self.b_output), show(&self.b_final))
    }

    pub fn t_cell(&self) -> String {
        format!("{}·{}", show(&self.t_output), show(&self.t_final))
    }

    pub fn cells(&self) -> [String; 7] {
        [
            self.u.to_string(),
            self.val_f.to_string(),
            self.b_cell(),
            self.b_val.to_string(),
            self.val_fc.to_string(),
            self.t_cell(),
            self.t_val.to_string(),
        ]
    }
}

/// All ternary words of length 1 to 3, shortest first and lexicographic.
pub fn table3() -> Vec<TableRow> {
    let (b, t) = (berstel(), modified());
    (1..=3)
        .flat_map(|len| Word::all_of_length(3, len))
        .map(|u| {
            let rb = b.run(&u).expect("total");
            let rt = t.run(&u).expect("total");
            TableRow {
                val_f: val_f(&u),
                b_val: val_f(&rb.concatenated()),
                val_fc: val_fc(&u).expect("nonempty"),
                t_val: val_fc(&rt.concatenated()).expect("nonempty"),
                b_output: rb.output,
                b_final: rb.final_output,
                t_output: rt.output,
                t_final: rt.final_output,
                u,
            }
        })
        .collect()
}

pub const TABLE3_HEADER: [&str; 7] = [
    "u",
    "val_F(u)",
    "B(u)·B↓(u)",
    "val_F",
    "val_Fc(u)",
    "T(u)·T↓(u)",
    "val_Fc",
];

/// Aligned plain text, one row per line, columns separated by two spaces.
pub fn table3_text(rows: &[TableRow]) -> String {
    let cells: Vec<[String; 7]> = std::iter::once(TABLE3_HEADER.map(String::from))
        .chain(rows.iter().map(TableRow::cells))
        .collect();
    let mut widths = [0usize; 7];
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(cell, w)| {
                let pad = w - cell.chars().count();
                format!("{cell}{}", " ".repeat(pad))
            })
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn table3_csv(rows: &[TableRow]) -> String {
    let mut out = TABLE3_HEADER.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.cells().join(","));
        out.push('\n');
    }
    out
}
