//! Rebuilding the Berstel adder from the θ-map.
//!
//! Every ternary word `u` has a unique splitting of its value as
//! `val_F(u) = val_F(w_u · s_u)` with `|w_u| = |u|` and `s_u` one of the five
//! Zeckendorf words of length three. The pair `(s_u, θ(u))` decides how the
//! splitting evolves when a digit is appended, and exploring these pairs
//! from `(000, 0)` gives a machine with ten states and thirty transitions.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{DerivationError, DomainError, Error};
use crate::fib::val_f;
use crate::mealy::{MachineSpec, MealyMachine, TransitionSpec};
use crate::word::{Digit, Word};

/// The binary words of length three without the factor `11`, ordered by value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateTriple {
    T000,
    T001,
    T010,
    T100,
    T101,
}

impl StateTriple {
    pub const ALL: [StateTriple; 5] = [
        StateTriple::T000,
        StateTriple::T001,
        StateTriple::T010,
        StateTriple::T100,
        StateTriple::T101,
    ];

    /// `val_F` of the triple; `0..=4`.
    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn from_value(v: u8) -> Option<StateTriple> {
        StateTriple::ALL.get(v as usize).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StateTriple::T000 => "000",
            StateTriple::T001 => "001",
            StateTriple::T010 => "010",
            StateTriple::T100 => "100",
            StateTriple::T101 => "101",
        }
    }

    pub fn word(self) -> Word {
        self.as_str().parse().unwrap()
    }

    pub fn from_word(word: &Word) -> Option<StateTriple> {
        StateTriple::ALL
            .into_iter()
            .find(|t| t.as_str() == word.to_string())
    }
}

impl fmt::Display for StateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An equivalence class of ternary words: same final triple and same θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaClass {
    pub s: StateTriple,
    pub theta: i64,
}

impl ThetaClass {
    pub const INITIAL: ThetaClass = ThetaClass {
        s: StateTriple::T000,
        theta: 0,
    };

    /// The adder state name, e.g. `101.7`.
    pub fn name(&self) -> String {
        format!("{}.{}", self.s, self.theta)
    }
}

impl fmt::Display for ThetaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.s, self.theta)
    }
}

/// The splitting `val_F(u) = val_F(w · s)` together with the digits appended
/// to `w` at each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    pub w: Word,
    pub s: StateTriple,
    /// Equal to `w`: the `i`-th digit is λ of the prefix of length `i + 1`.
    pub lambdas: Word,
    /// `s` of every prefix of `u`, from the empty prefix to `u` itself.
    pub prefix_triples: Vec<StateTriple>,
}

/// Computes `(w_u, s_u)` by brute force, searching all ten candidate
/// extensions at every step.
pub fn oracle_translate(u: &Word) -> Result<Translation, DerivationError> {
    let mut w = Word::empty();
    let mut s = StateTriple::T000;
    let mut prefix_triples = vec![s];
    let mut prefix = Word::empty();
    for &a in u.digits() {
        prefix.push(a);
        let target = val_f(&prefix);
        let mut found = Vec::new();
        for b in Digit::BINARY {
            for t in StateTriple::ALL {
                let mut candidate = w.clone();
                candidate.push(b);
                if val_f(&candidate.concat(&t.word())) == target {
                    found.push((b, t));
                }
            }
        }
        let (b, t) = match found.as_slice() {
            [only] => *only,
            _ => {
                return Err(DerivationError::Ambiguous {
                    word: prefix.to_string(),
                    count: found.len(),
                })
            }
        };
        w.push(b);
        s = t;
        prefix_triples.push(t);
    }
    Ok(Translation {
        lambdas: w.clone(),
        w,
        s,
        prefix_triples,
    })
}

/// θ by its defining recursion:
/// `θ(ua) = val_F(s_u) + val_F(s_ua) − 3·λ_ua + a` and `θ(ε) = 0`.
pub fn theta(u: &Word) -> Result<i64, DerivationError> {
    let Some(&a) = u.digits().last() else {
        return Ok(0);
    };
    let tr = oracle_translate(u)?;
    let n = u.len();
    let before = tr.prefix_triples[n - 1];
    let after = tr.prefix_triples[n];
    let lambda = tr.lambdas[n - 1];
    Ok(before.value() as i64 + after.value() as i64 - 3 * lambda.value() as i64 + a.value() as i64)
}

/// One step of the class recursion. `θ + a` is written as `val_F(λ · t)`,
/// which fixes the digit `λ` and the next triple `t`.
pub fn step_class(c: ThetaClass, a: Digit) -> Result<(ThetaClass, Digit), DerivationError> {
    let check = |theta: i64| {
        if (0..=7).contains(&theta) {
            Ok(())
        } else {
            Err(DerivationError::ThetaOutOfRange {
                from: c.name(),
                input: a,
                theta,
            })
        }
    };
    check(c.theta)?;
    let m = c.theta as u8 + a.value();
    let (lambda, t) = if m < 5 {
        (Digit::Zero, StateTriple::from_value(m).unwrap())
    } else {
        (Digit::One, StateTriple::from_value(m - 5).unwrap())
    };
    let theta =
        c.s.value() as i64 + t.value() as i64 - 3 * lambda.value() as i64 + a.value() as i64;
    check(theta)?;
    Ok((ThetaClass { s: t, theta }, lambda))
}

/// Outgoing edges of one explored class, indexed by input digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExploredClass {
    pub class: ThetaClass,
    pub edges: [(ThetaClass, Digit); 3],
}

/// Breadth-first closure of `step_class` from `(000, 0)`, in discovery order.
pub fn explore() -> Result<Vec<ExploredClass>, DerivationError> {
    let mut seen = HashMap::from([(ThetaClass::INITIAL, ())]);
    let mut queue = VecDeque::from([ThetaClass::INITIAL]);
    let mut out = Vec::new();
    while let Some(class) = queue.pop_front() {
        let mut edges = [(class, Digit::Zero); 3];
        for a in Digit::TERNARY {
            let (next, lambda) = step_class(class, a)?;
            edges[a.value() as usize] = (next, lambda);
            if seen.insert(next, ()).is_none() {
                queue.push_back(next);
            }
        }
        out.push(ExploredClass { class, edges });
    }
    Ok(out)
}

/// The machine `𝒵` read off the class graph.
pub fn derive_z() -> Result<MealyMachine, Error> {
    let classes = explore()?;
    if classes.len() != 10 {
        return Err(DerivationError::StateCount {
            expected: 10,
            found: classes.len(),
        }
        .into());
    }
    let mut transitions = Vec::new();
    for c in &classes {
        for a in Digit::TERNARY {
            let (next, lambda) = c.edges[a.value() as usize];
            transitions.push(TransitionSpec::new(
                &c.class.name(),
                a,
                Word::new(vec![lambda]),
                &next.name(),
            ));
        }
    }
    let spec = MachineSpec {
        states: classes.iter().map(|c| c.class.name()).collect(),
        initial: ThetaClass::INITIAL.name(),
        input_alphabet: Digit::TERNARY.to_vec(),
        output_alphabet: Digit::BINARY.to_vec(),
        transitions,
        phi: classes
            .iter()
            .map(|c| (c.class.name(), c.class.s.word()))
            .collect::<BTreeMap<_, _>>(),
    };
    Ok(MealyMachine::build(&spec)?)
}

/// Outcome of one case of the append-0 check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Append0Case {
    pub name: &'static str,
    pub allowed: [i64; 2],
    /// Number of ordered pairs `(u, w)` covered.
    pub pairs: u64,
    pub counterexample: Option<(Word, Word, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Append0Report {
    pub max_len: usize,
    pub cases: [Append0Case; 3],
}

impl Append0Report {
    pub fn holds(&self) -> bool {
        self.cases.iter().all(|c| c.counterexample.is_none())
    }
}

impl fmt::Display for Append0Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            write!(f, "append-0 {} over {} pairs: ", c.name, c.pairs)?;
            match &c.counterexample {
                None => writeln!(f, "ok")?,
                Some((u, w, d)) => writeln!(f, "counterexample u={u} w={w} difference {d}")?,
            }
        }
        Ok(())
    }
}

pub const APPEND0_LIMIT: usize = 9;

#[derive(Clone)]
struct Extremes {
    min: (i64, Word),
    max: (i64, Word),
    count: u64,
}

impl Extremes {
    fn new(v: i64, word: &Word) -> Self {
        Extremes {
            min: (v, word.clone()),
            max: (v, word.clone()),
            count: 1,
        }
    }

    fn add(&mut self, v: i64, word: &Word) {
        if v < self.min.0 {
            self.min = (v, word.clone());
        }
        if v > self.max.0 {
            self.max = (v, word.clone());
        }
        self.count += 1;
    }
}

/// Checks, over all ternary words `u` and `w` of length at most `max_len`
/// with equal value, that appending `0` changes the difference of values by
/// at most one (and only in the stated direction when `w` ends with `000`
/// or `101`).
///
/// Words are compared at the common length `max_len`; shorter words are
/// covered by their zero-padded forms, which have the same values.
pub fn check_append0_lemma(max_len: usize) -> Result<Append0Report, DomainError> {
    if max_len > APPEND0_LIMIT {
        return Err(DomainError::BoundTooLarge {
            limit: APPEND0_LIMIT,
            requested: max_len,
        });
    }
    let zero: Word = "0".parse().unwrap();
    let endings: [Word; 2] = ["000".parse().unwrap(), "101".parse().unwrap()];
    // value -> extremes of val_F(x0) over all x, and over x ending with 000 / 101
    let mut groups: BTreeMap<BigInt, [Option<Extremes>; 3]> = BTreeMap::new();
    for x in Word::all_of_length(3, max_len) {
        let shifted = val_f(&x.concat(&zero)).to_i64().expect("small words");
        let slots = groups.entry(val_f(&x)).or_insert([None, None, None]);
        let mut record = |i: usize| match &mut slots[i] {
            Some(e) => e.add(shifted, &x),
            slot @ None => *slot = Some(Extremes::new(shifted, &x)),
        };
        record(0);
        if x.ends_with(&endings[0]) {
            record(1);
        }
        if x.ends_with(&endings[1]) {
            record(2);
        }
    }

    let mut cases = [
        Append0Case {
            name: "(i) any partner",
            allowed: [-1, 1],
            pairs: 0,
            counterexample: None,
        },
        Append0Case {
            name: "(ii) partner ending 000",
            allowed: [0, 1],
            pairs: 0,
            counterexample: None,
        },
        Append0Case {
            name: "(iii) partner ending 101",
            allowed: [-1, 0],
            pairs: 0,
            counterexample: None,
        },
    ];
    for slots in groups.values() {
        let all = slots[0].as_ref().expect("every group has a word");
        for (case, partners) in cases.iter_mut().zip(&slots[..]) {
            let Some(partners) = partners else {
                continue;
            };
            case.pairs += all.count * partners.count;
            if case.counterexample.is_some() {
                continue;
            }
            let [lo, hi] = case.allowed;
            let widest = all.max.0 - partners.min.0;
            let narrowest = all.min.0 - partners.max.0;
            if widest > hi {
                case.counterexample = Some((all.max.1.clone(), partners.min.1.clone(), widest));
            } else if narrowest < lo {
                case.counterexample = Some((all.min.1.clone(), partners.max.1.clone(), narrowest));
            }
        }
    }
    Ok(Append0Report { max_len, cases })
}
