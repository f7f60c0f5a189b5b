//! Finite Mealy automata and their initial-state partition logics.
//!
//! Only single-symbol experiments are considered: feeding one input to an
//! automaton in an unknown initial state and reading the output splits the
//! states into classes of equal output. Those partitions, one per input,
//! pasted together, form the automaton's logic.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::gum::{group_by_value, BLANK};
use crate::logic::{Diagram, LogicError, Partition, PartitionLogic};
use crate::states::{self, StatesError, TwoValuedState};
use crate::text::{directives, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown input `{0}`")]
    UnknownInput(String),
    #[error("unknown output `{0}`")]
    UnknownOutput(String),
    #[error("{kind} `{label}` declared twice")]
    Duplicate { kind: &'static str, label: String },
    #[error("{table} undefined for state `{state}` and input `{input}`")]
    Missing {
        table: &'static str,
        state: String,
        input: String,
    },
    #[error("{table} defined twice for state `{state}` and input `{input}`")]
    Repeated {
        table: &'static str,
        state: String,
        input: String,
    },
    #[error("an automaton needs at least one state and one input")]
    Empty,
    #[error("malformed transition or output table: {0}")]
    Shape(String),
    #[error(transparent)]
    States(#[from] StatesError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyAutomaton {
    states: Vec<String>,
    inputs: Vec<String>,
    outputs: Vec<String>,
    /// `delta[s][i]` is a state index.
    delta: Vec<Vec<usize>>,
    /// `lambda[s][i]` is an output index.
    lambda: Vec<Vec<usize>>,
}

fn index_labels<'a>(
    kind: &'static str,
    labels: &'a [String],
) -> Result<HashMap<&'a str, usize>, AutomatonError> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), i).is_some() {
            return Err(AutomatonError::Duplicate {
                kind,
                label: l.clone(),
            });
        }
    }
    Ok(map)
}

impl MealyAutomaton {
    pub fn new(
        states: Vec<String>,
        inputs: Vec<String>,
        outputs: Vec<String>,
        delta: Vec<Vec<usize>>,
        lambda: Vec<Vec<usize>>,
    ) -> Result<Self, AutomatonError> {
        if states.is_empty() || inputs.is_empty() {
            return Err(AutomatonError::Empty);
        }
        index_labels("state", &states)?;
        index_labels("input", &inputs)?;
        index_labels("output", &outputs)?;
        for (name, table, bound) in [
            ("delta", &delta, states.len()),
            ("lambda", &lambda, outputs.len()),
        ] {
            if table.len() != states.len()
                || table
                    .iter()
                    .any(|row| row.len() != inputs.len() || row.iter().any(|&v| v >= bound))
            {
                return Err(AutomatonError::Shape(format!(
                    "{name} is not a total map into its codomain"
                )));
            }
        }
        Ok(MealyAutomaton {
            states,
            inputs,
            outputs,
            delta,
            lambda,
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn delta(&self, s: usize, i: usize) -> usize {
        self.delta[s][i]
    }

    pub fn lambda(&self, s: usize, i: usize) -> usize {
        self.lambda[s][i]
    }

    pub fn state_index(&self, s: &str) -> Result<usize, AutomatonError> {
        self.states
            .iter()
            .position(|x| x == s)
            .ok_or_else(|| AutomatonError::UnknownState(s.to_string()))
    }

    pub fn input_index(&self, i: &str) -> Result<usize, AutomatonError> {
        self.inputs
            .iter()
            .position(|x| x == i)
            .ok_or_else(|| AutomatonError::UnknownInput(i.to_string()))
    }

    /// States grouped by the output they emit on `input`.
    pub fn input_partition(&self, input: &str) -> Result<Partition, AutomatonError> {
        Ok(self.partition_of(self.input_index(input)?))
    }

    fn partition_of(&self, i: usize) -> Partition {
        group_by_value((0..self.states.len()).map(|s| self.lambda[s][i]))
    }

    /// Pasting of all input partitions, over the states.
    pub fn logic(&self) -> Result<PartitionLogic, AutomatonError> {
        let parts = (0..self.inputs.len())
            .map(|i| self.partition_of(i))
            .collect();
        Ok(PartitionLogic::new(self.states.clone(), parts)?)
    }

    /// Feeds `word` starting in `start` and returns the emitted outputs.
    pub fn run<S: AsRef<str>>(&self, start: &str, word: &[S]) -> Result<Vec<&str>, AutomatonError> {
        let s = self.state_index(start)?;
        let word = word
            .iter()
            .map(|i| self.input_index(i.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let (out, _) = self.run_indices(s, &word);
        Ok(out.into_iter().map(|o| self.outputs[o].as_str()).collect())
    }

    /// Output indices and final state for an input word given as indices.
    pub fn run_indices(&self, mut s: usize, word: &[usize]) -> (Vec<usize>, usize) {
        let mut out = Vec::with_capacity(word.len());
        for &i in word {
            out.push(self.lambda[s][i]);
            s = self.delta[s][i];
        }
        (out, s)
    }

    /// Parses the automaton text format:
    ///
    /// ```text
    /// states 1 2
    /// inputs 0
    /// outputs a b
    /// delta 1 0 -> 1
    /// delta 2 0 -> 1
    /// lambda 1 0 -> a
    /// lambda 2 0 -> b
    /// ```
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let mut headers: [Option<Vec<String>>; 3] = [None, None, None];
        let mut entries: Vec<(usize, bool, &str, &str, &str)> = Vec::new();
        for (line, tokens) in directives(src) {
            let slot = match tokens[0] {
                "states" => Some(0),
                "inputs" => Some(1),
                "outputs" => Some(2),
                _ => None,
            };
            if let Some(k) = slot {
                if headers[k].is_some() {
                    return Err(FormatError::syntax(
                        line,
                        format!("`{}` given more than once", tokens[0]),
                    ));
                }
                headers[k] = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
                continue;
            }
            match tokens[..] {
                [kw @ ("delta" | "lambda"), s, i, "->", target] => {
                    entries.push((line, kw == "delta", s, i, target))
                }
                ["delta" | "lambda", ..] => {
                    return Err(FormatError::syntax(
                        line,
                        format!("expected `{} <s> <i> -> <x>`", tokens[0]),
                    ))
                }
                _ => {
                    return Err(FormatError::syntax(
                        line,
                        format!("unknown directive `{}`", tokens[0]),
                    ))
                }
            }
        }
        let [states, inputs, outputs] = headers;
        let states = states.ok_or_else(|| FormatError::syntax(0, "missing `states` line"))?;
        let inputs = inputs.ok_or_else(|| FormatError::syntax(0, "missing `inputs` line"))?;
        let outputs = outputs.ok_or_else(|| FormatError::syntax(0, "missing `outputs` line"))?;
        let inv = FormatError::invalid;
        let si = index_labels("state", &states).map_err(inv)?;
        let ii = index_labels("input", &inputs).map_err(inv)?;
        let oi = index_labels("output", &outputs).map_err(inv)?;
        let mut delta = vec![vec![None; inputs.len()]; states.len()];
        let mut lambda = vec![vec![None; inputs.len()]; states.len()];
        for (_, is_delta, s, i, target) in entries {
            let &sx = si
                .get(s)
                .ok_or_else(|| inv(AutomatonError::UnknownState(s.into())))?;
            let &ix = ii
                .get(i)
                .ok_or_else(|| inv(AutomatonError::UnknownInput(i.into())))?;
            let (table, name, value) = if is_delta {
                let &t = si
                    .get(target)
                    .ok_or_else(|| inv(AutomatonError::UnknownState(target.into())))?;
                (&mut delta, "delta", t)
            } else {
                let &o = oi
                    .get(target)
                    .ok_or_else(|| inv(AutomatonError::UnknownOutput(target.into())))?;
                (&mut lambda, "lambda", o)
            };
            if table[sx][ix].replace(value).is_some() {
                return Err(inv(AutomatonError::Repeated {
                    table: name,
                    state: s.into(),
                    input: i.into(),
                }));
            }
        }
        let complete = |table: Vec<Vec<Option<usize>>>, name: &'static str| {
            table
                .into_iter()
                .enumerate()
                .map(|(s, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(i, v)| {
                            v.ok_or_else(|| AutomatonError::Missing {
                                table: name,
                                state: states[s].clone(),
                                input: inputs[i].clone(),
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(inv)
        };
        let delta = complete(delta, "delta")?;
        let lambda = complete(lambda, "lambda")?;
        MealyAutomaton::new(states, inputs, outputs, delta, lambda).map_err(inv)
    }
}

impl fmt::Display for MealyAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.states.join(" "))?;
        writeln!(f, "inputs {}", self.inputs.join(" "))?;
        writeln!(f, "outputs {}", self.outputs.join(" "))?;
        for (s, name) in self.states.iter().enumerate() {
            for (i, input) in self.inputs.iter().enumerate() {
                writeln!(
                    f,
                    "delta {name} {input} -> {}",
                    self.states[self.delta[s][i]]
                )?;
            }
        }
        for (s, name) in self.states.iter().enumerate() {
            for (i, input) in self.inputs.iter().enumerate() {
                writeln!(
                    f,
                    "lambda {name} {input} -> {}",
                    self.outputs[self.lambda[s][i]]
                )?;
            }
        }
        Ok(())
    }
}

/// One state per two-valued state (labelled `1..=r`), one input per block
/// (labelled `0..t`), outputs = atom labels plus [`BLANK`]. On input `l`
/// state `m_k` emits the atom of block `l` that `m_k` values 1, or
/// [`BLANK`] should the block have none. Every transition leads to the
/// first state, so the initial state is forgotten after one step.
pub fn automaton_from_states(
    d: &Diagram,
    states: &[TwoValuedState],
) -> Result<MealyAutomaton, AutomatonError> {
    states::check_states(d, states)?;
    let mut outputs = d.atoms().to_vec();
    if outputs.iter().any(|a| a == BLANK) {
        return Err(AutomatonError::Duplicate {
            kind: "output",
            label: BLANK.to_string(),
        });
    }
    outputs.push(BLANK.to_string());
    let blank = outputs.len() - 1;
    let t = d.blocks().len();
    let lambda = states
        .iter()
        .map(|m| {
            d.blocks()
                .iter()
                .map(|b| m.true_atom(b).unwrap_or(blank))
                .collect()
        })
        .collect();
    MealyAutomaton::new(
        states::state_labels(states.len()),
        (0..t).map(|l| l.to_string()).collect(),
        outputs,
        vec![vec![0; t]; states.len()],
        lambda,
    )
}
