//! Deterministic Mealy machines with a final output word per state.
//!
//! A machine reads its input left to right, emitting a word of length at
//! most one on every transition. After the last input digit the final
//! output `φ(last state)` can be appended.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{MachineError, RunError};
use crate::word::{Digit, Word};

/// Output and target index for each input digit of one state.
type RawRow = [Option<(Option<Digit>, usize)>; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub output: Option<Digit>,
    pub target: StateId,
}

/// Serializable description of a machine; also the input to [`MealyMachine::build`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineSpec {
    pub states: Vec<String>,
    pub initial: String,
    pub input_alphabet: Vec<Digit>,
    pub output_alphabet: Vec<Digit>,
    pub transitions: Vec<TransitionSpec>,
    pub phi: BTreeMap<String, Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub from: String,
    pub input: Digit,
    pub output: Word,
    pub to: String,
}

impl TransitionSpec {
    pub fn new(from: &str, input: Digit, output: Word, to: &str) -> Self {
        TransitionSpec {
            from: from.to_owned(),
            input,
            output,
            to: to.to_owned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MealyMachine {
    names: Vec<String>,
    index: HashMap<String, StateId>,
    initial: StateId,
    input_alphabet: Vec<Digit>,
    output_alphabet: Vec<Digit>,
    table: Vec<[Option<Edge>; 3]>,
    phi: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub output: Word,
    pub last_state: StateId,
    pub final_output: Word,
}

impl RunResult {
    /// `output · final_output`
    pub fn concatenated(&self) -> Word {
        self.output.concat(&self.final_output)
    }
}

/// One transition taken during a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub from: String,
    pub input: Digit,
    pub output: Word,
    pub to: String,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -{}/{}-> {}",
            self.from,
            self.input,
            eps_or(&self.output),
            self.to
        )
    }
}

fn eps_or(word: &Word) -> String {
    if word.is_empty() {
        "eps".to_owned()
    } else {
        word.to_string()
    }
}

impl MealyMachine {
    /// Validates `spec` and drops states unreachable from the initial state.
    pub fn build(spec: &MachineSpec) -> Result<MealyMachine, MachineError> {
        let mut index = HashMap::new();
        for (i, name) in spec.states.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(MachineError::DuplicateState(name.clone()));
            }
        }
        let lookup = |name: &String| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| MachineError::UnknownState(name.clone()))
        };
        let check_output = |word: &Word| -> Result<(), MachineError> {
            match word
                .digits()
                .iter()
                .find(|d| !spec.output_alphabet.contains(d))
            {
                Some(&digit) => Err(MachineError::DigitNotInAlphabet {
                    digit,
                    which: "output",
                }),
                None => Ok(()),
            }
        };

        let initial = lookup(&spec.initial)?;
        let mut table: Vec<RawRow> = vec![[None; 3]; spec.states.len()];
        for t in &spec.transitions {
            let from = lookup(&t.from)?;
            let to = lookup(&t.to)?;
            if !spec.input_alphabet.contains(&t.input) {
                return Err(MachineError::DigitNotInAlphabet {
                    digit: t.input,
                    which: "input",
                });
            }
            if t.output.len() > 1 {
                return Err(MachineError::OutputTooLong(t.output.to_string()));
            }
            check_output(&t.output)?;
            let slot = &mut table[from][t.input.value() as usize];
            if slot.is_some() {
                return Err(MachineError::Nondeterministic {
                    state: t.from.clone(),
                    input: t.input,
                });
            }
            *slot = Some((t.output.first(), to));
        }
        for name in spec.phi.keys() {
            lookup(name)?;
        }
        let mut phi = Vec::with_capacity(spec.states.len());
        for name in &spec.states {
            let word = spec
                .phi
                .get(name)
                .ok_or_else(|| MachineError::MissingFinalOutput(name.clone()))?;
            check_output(word)?;
            phi.push(word.clone());
        }

        // keep reachable states, in declaration order
        let mut reachable = vec![false; spec.states.len()];
        reachable[initial] = true;
        let mut queue = VecDeque::from([initial]);
        while let Some(s) = queue.pop_front() {
            for (_, to) in table[s].iter().flatten() {
                if !reachable[*to] {
                    reachable[*to] = true;
                    queue.push_back(*to);
                }
            }
        }
        let mut renumber = vec![usize::MAX; spec.states.len()];
        let mut names = Vec::new();
        for (old, keep) in reachable.iter().enumerate() {
            if *keep {
                renumber[old] = names.len();
                names.push(spec.states[old].clone());
            }
        }
        let table = (0..spec.states.len())
            .filter(|&s| reachable[s])
            .map(|s| {
                table[s].map(|slot| {
                    slot.map(|(output, to)| Edge {
                        output,
                        target: StateId(renumber[to]),
                    })
                })
            })
            .collect();
        let phi = phi
            .into_iter()
            .enumerate()
            .filter(|(s, _)| reachable[*s])
            .map(|(_, word)| word)
            .collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), StateId(i)))
            .collect();

        Ok(MealyMachine {
            names,
            index,
            initial: StateId(renumber[initial]),
            input_alphabet: spec.input_alphabet.clone(),
            output_alphabet: spec.output_alphabet.clone(),
            table,
            phi,
        })
    }

    pub fn to_spec(&self) -> MachineSpec {
        let mut transitions = Vec::new();
        for (s, row) in self.table.iter().enumerate() {
            for (a, edge) in row.iter().enumerate() {
                if let Some(edge) = edge {
                    transitions.push(TransitionSpec {
                        from: self.names[s].clone(),
                        input: Digit::from_value(a as u8).unwrap(),
                        output: edge.output.into_iter().collect(),
                        to: self.names[edge.target.0].clone(),
                    });
                }
            }
        }
        MachineSpec {
            states: self.names.clone(),
            initial: self.names[self.initial.0].clone(),
            input_alphabet: self.input_alphabet.clone(),
            output_alphabet: self.output_alphabet.clone(),
            transitions,
            phi: self
                .names
                .iter()
                .cloned()
                .zip(self.phi.iter().cloned())
                .collect(),
        }
    }

    pub fn export_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("machine specs serialize")
    }

    pub fn import_json(text: &str) -> Result<MealyMachine, MachineError> {
        let spec: MachineSpec = serde_json::from_str(text).map_err(|e| MachineError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        MealyMachine::build(&spec)
    }

    /// Graphviz rendering; edges are labelled `input/output`, with `eps`
    /// for an empty output.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph mealy {\n    rankdir=LR;\n");
        out.push_str("    __initial [shape=point];\n");
        for (s, name) in self.names.iter().enumerate() {
            let shape = if s == self.initial.0 {
                "doublecircle"
            } else {
                "ellipse"
            };
            let _ = writeln!(
                out,
                "    \"{name}\" [shape={shape}, xlabel=\"{}\"];",
                eps_or(&self.phi[s])
            );
        }
        let _ = writeln!(out, "    __initial -> \"{}\";", self.names[self.initial.0]);
        for (s, row) in self.table.iter().enumerate() {
            for (a, edge) in row.iter().enumerate() {
                if let Some(edge) = edge {
                    let output = edge.output.map_or("eps".to_owned(), |d| d.to_string());
                    let _ = writeln!(
                        out,
                        "    \"{}\" -> \"{}\" [label=\"{a}/{output}\"];",
                        self.names[s], self.names[edge.target.0]
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn transition_count(&self) -> usize {
        self.table.iter().flatten().flatten().count()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.names.len()).map(StateId)
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.names[s.0]
    }

    pub fn input_alphabet(&self) -> &[Digit] {
        &self.input_alphabet
    }

    pub fn output_alphabet(&self) -> &[Digit] {
        &self.output_alphabet
    }

    pub fn transition(&self, s: StateId, input: Digit) -> Option<Edge> {
        if !self.input_alphabet.contains(&input) {
            return None;
        }
        self.table[s.0][input.value() as usize]
    }

    pub fn final_output(&self, s: StateId) -> &Word {
        &self.phi[s.0]
    }

    /// Runs `u` starting from an arbitrary state.
    pub fn run_from(&self, start: StateId, u: &Word) -> Result<RunResult, RunError> {
        let mut state = start;
        let mut output = Vec::with_capacity(u.len());
        for (position, &input) in u.digits().iter().enumerate() {
            let edge =
                self.transition(state, input)
                    .ok_or_else(|| RunError::MissingTransition {
                        position,
                        state: self.names[state.0].clone(),
                        input,
                    })?;
            output.extend(edge.output);
            state = edge.target;
        }
        Ok(RunResult {
            output: Word::new(output),
            last_state: state,
            final_output: self.phi[state.0].clone(),
        })
    }

    pub fn run(&self, u: &Word) -> Result<RunResult, RunError> {
        self.run_from(self.initial, u)
    }

    /// `M(u) · M↓(u)`
    pub fn run_with_final(&self, u: &Word) -> Result<Word, RunError> {
        self.run(u).map(|r| r.concatenated())
    }

    pub fn trace(&self, u: &Word) -> Result<Vec<Step>, RunError> {
        let mut state = self.initial;
        let mut steps = Vec::with_capacity(u.len());
        for (position, &input) in u.digits().iter().enumerate() {
            let edge =
                self.transition(state, input)
                    .ok_or_else(|| RunError::MissingTransition {
                        position,
                        state: self.names[state.0].clone(),
                        input,
                    })?;
            steps.push(Step {
                from: self.names[state.0].clone(),
                input,
                output: edge.output.into_iter().collect(),
                to: self.names[edge.target.0].clone(),
            });
            state = edge.target;
        }
        Ok(steps)
    }

    /// True if a bijection of states fixes the initial states and preserves
    /// transitions, outputs and final outputs.
    pub fn is_isomorphic(&self, other: &MealyMachine) -> bool {
        isomorphism_mismatch(self, other).is_none()
    }
}

/// Describes the first obstruction to an isomorphism between two machines,
/// or `None` if they are isomorphic.
pub fn isomorphism_mismatch(a: &MealyMachine, b: &MealyMachine) -> Option<String> {
    let mut alpha_a = a.input_alphabet.clone();
    let mut alpha_b = b.input_alphabet.clone();
    alpha_a.sort();
    alpha_b.sort();
    if alpha_a != alpha_b {
        return Some(format!(
            "input alphabets differ: {alpha_a:?} vs {alpha_b:?}"
        ));
    }
    if a.state_count() != b.state_count() {
        return Some(format!(
            "state counts differ: {} vs {}",
            a.state_count(),
            b.state_count()
        ));
    }
    let mut forward: Vec<Option<StateId>> = vec![None; a.state_count()];
    let mut backward: Vec<Option<StateId>> = vec![None; b.state_count()];
    forward[a.initial.0] = Some(b.initial);
    backward[b.initial.0] = Some(a.initial);
    let mut queue = VecDeque::from([(a.initial, b.initial)]);
    while let Some((sa, sb)) = queue.pop_front() {
        let (na, nb) = (a.state_name(sa), b.state_name(sb));
        if a.final_output(sa) != b.final_output(sb) {
            return Some(format!(
                "final output of {na} is {:?} but of {nb} is {:?}",
                a.final_output(sa).to_string(),
                b.final_output(sb).to_string()
            ));
        }
        for &input in &alpha_a {
            match (a.transition(sa, input), b.transition(sb, input)) {
                (None, None) => {}
                (Some(ea), Some(eb)) => {
                    if ea.output != eb.output {
                        return Some(format!(
                            "{na} on {input} outputs {:?} but {nb} outputs {:?}",
                            ea.output.map(|d| d.to_char()),
                            eb.output.map(|d| d.to_char())
                        ));
                    }
                    match (forward[ea.target.0], backward[eb.target.0]) {
                        (None, None) => {
                            forward[ea.target.0] = Some(eb.target);
                            backward[eb.target.0] = Some(ea.target);
                            queue.push_back((ea.target, eb.target));
                        }
                        (Some(x), Some(y)) if x == eb.target && y == ea.target => {}
                        _ => {
                            return Some(format!(
                                "{na} on {input} goes to {} but {nb} goes to {}",
                                a.state_name(ea.target),
                                b.state_name(eb.target)
                            ))
                        }
                    }
                }
                (ea, _) => {
                    return Some(format!(
                        "transition on {input} defined from {} only",
                        if ea.is_some() { na } else { nb }
                    ))
                }
            }
        }
    }
    None
}
