//! Two-valued states of a diagram, the partition logic they induce, and
//! exact convex realizability of rational states.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::logic::{Diagram, LogicError, PartitionLogic};
use crate::simplex::{self, Phase1};
use crate::text::{directives, FormatError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatesError {
    #[error("the state set is empty")]
    EmptyStateSet,
    #[error("state {index} is not a two-valued state of the diagram")]
    InvalidState { index: usize },
    #[error("dimension mismatch: expected {expected} atom values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("atom `{0}` has a negative value")]
    NegativeValue(String),
    #[error("block {block} sums to {sum}, not 1")]
    BlockSum { block: usize, sum: Rational },
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// A 0/1 valuation of the atoms of a diagram, in atom order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoValuedState {
    values: Vec<bool>,
}

impl TwoValuedState {
    pub fn new(values: Vec<bool>) -> Self {
        TwoValuedState { values }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, atom: usize) -> bool {
        self.values[atom]
    }

    /// Exactly one true atom in every block.
    pub fn is_valid_on(&self, d: &Diagram) -> bool {
        self.values.len() == d.atoms().len()
            && d.blocks()
                .iter()
                .all(|b| b.iter().filter(|&&a| self.values[a]).count() == 1)
    }

    /// The atom of `block` valued 1, if there is exactly one.
    pub fn true_atom(&self, block: &[usize]) -> Option<usize> {
        let mut it = block.iter().copied().filter(|&a| self.values[a]);
        match (it.next(), it.next()) {
            (Some(a), None) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for TwoValuedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for TwoValuedState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(format!("expected 0 or 1, found `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TwoValuedState::new)
    }
}

/// Partial assignment during enumeration.
#[derive(Clone)]
struct Partial {
    values: Vec<Option<bool>>,
}

struct Enumerator<'a> {
    d: &'a Diagram,
    blocks_of: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn new(d: &'a Diagram) -> Self {
        let blocks_of = (0..d.atoms().len())
            .map(|a| d.blocks_of(a).collect())
            .collect();
        Enumerator { d, blocks_of }
    }

    /// Sets `atom` and propagates the one-true-atom-per-block rule. Returns
    /// `false` on conflict.
    fn assign(&self, p: &mut Partial, atom: usize, value: bool) -> bool {
        let mut queue = vec![(atom, value)];
        while let Some((a, v)) = queue.pop() {
            match p.values[a] {
                Some(old) if old == v => continue,
                Some(_) => return false,
                None => p.values[a] = Some(v),
            }
            for &j in &self.blocks_of[a] {
                let block = &self.d.blocks()[j];
                let mut trues = 0;
                let mut open = None;
                let mut n_open = 0;
                for &b in block {
                    match p.values[b] {
                        Some(true) => trues += 1,
                        Some(false) => {}
                        None => {
                            n_open += 1;
                            open = Some(b);
                        }
                    }
                }
                match (trues, n_open) {
                    (t, _) if t > 1 => return false,
                    (1, _) => queue.extend(
                        block
                            .iter()
                            .filter(|&&b| p.values[b].is_none())
                            .map(|&b| (b, false)),
                    ),
                    (0, 0) => return false,
                    (0, 1) => queue.push((open.expect("one open atom"), true)),
                    _ => {}
                }
            }
        }
        true
    }

    fn first_open(p: &Partial) -> Option<usize> {
        p.values.iter().position(Option::is_none)
    }

    /// Children of `p` in lexicographic order (0 branch first).
    fn children(&self, p: &Partial, atom: usize) -> Vec<Partial> {
        [false, true]
            .into_iter()
            .filter_map(|v| {
                let mut c = p.clone();
                self.assign(&mut c, atom, v).then_some(c)
            })
            .collect()
    }

    fn dfs(&self, p: Partial, out: &mut Vec<TwoValuedState>) {
        match Self::first_open(&p) {
            None => out.push(TwoValuedState::new(
                p.values.into_iter().map(|v| v.expect("complete")).collect(),
            )),
            Some(atom) => {
                for c in self.children(&p, atom) {
                    self.dfs(c, out);
                }
            }
        }
    }
}

/// Smallest number of independent subtrees handed to the parallel executor.
const SPLIT_TARGET: usize = 64;

/// All two-valued states of `d`, ordered lexicographically by their 0/1
/// vector over the declared atom order.
pub fn enumerate_two_valued_states(d: &Diagram) -> Vec<TwoValuedState> {
    enumerate_two_valued_states_with(d, Exec::default())
}

/// Backtracking over atoms in declared order (0 before 1) with unit
/// propagation over blocks. Under [`Exec::Parallel`] the top of the search
/// tree is expanded breadth-first and the resulting subtrees are explored
/// concurrently; concatenating their results in frontier order keeps the
/// output identical to the sequential run.
pub fn enumerate_two_valued_states_with(d: &Diagram, exec: Exec) -> Vec<TwoValuedState> {
    let e = Enumerator::new(d);
    let mut root = Partial {
        values: vec![None; d.atoms().len()],
    };
    // Singleton blocks force their atom.
    for block in d.blocks() {
        if let [a] = block[..] {
            if !e.assign(&mut root, a, true) {
                return Vec::new();
            }
        }
    }
    let mut frontier = vec![root];
    if exec == Exec::Parallel {
        while frontier.len() < SPLIT_TARGET {
            if frontier.iter().all(|p| Enumerator::first_open(p).is_none()) {
                break;
            }
            frontier = frontier
                .into_iter()
                .flat_map(|p| match Enumerator::first_open(&p) {
                    None => vec![p],
                    Some(atom) => e.children(&p, atom),
                })
                .collect();
            if frontier.is_empty() {
                return Vec::new();
            }
        }
    }
    exec.map(frontier, |p| {
        let mut out = Vec::new();
        e.dfs(p, &mut out);
        out
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Every pair of distinct atoms is told apart by some state.
pub fn is_separating(states: &[TwoValuedState], d: &Diagram) -> bool {
    let n = d.atoms().len();
    (0..n).all(|a| (a + 1..n).all(|b| states.iter().any(|s| s.get(a) != s.get(b))))
}

/// Every atom is valued 1 by some state.
pub fn is_unital(states: &[TwoValuedState], d: &Diagram) -> bool {
    (0..d.atoms().len()).all(|a| states.iter().any(|s| s.get(a)))
}

/// Atoms that no state values 1.
pub fn never_true_atoms(states: &[TwoValuedState], d: &Diagram) -> Vec<usize> {
    (0..d.atoms().len())
        .filter(|&a| !states.iter().any(|s| s.get(a)))
        .collect()
}

pub(crate) fn check_states(d: &Diagram, states: &[TwoValuedState]) -> Result<(), StatesError> {
    if states.is_empty() {
        return Err(StatesError::EmptyStateSet);
    }
    match states.iter().position(|s| !s.is_valid_on(d)) {
        Some(index) => Err(StatesError::InvalidState { index }),
        None => Ok(()),
    }
}

/// Labels `1..=r` used for the ground set of state-induced logics and the
/// ball types or automaton states synthesized from states.
pub(crate) fn state_labels(r: usize) -> Vec<String> {
    (1..=r).map(|k| k.to_string()).collect()
}

/// Partition logic over the state labels `1..=r`: every block becomes the
/// partition whose cells are `{k | m_k(a) = 1}` for the atoms `a` of the
/// block. Cells of never-true atoms are empty and are dropped.
pub fn partition_logic_from_states(
    d: &Diagram,
    states: &[TwoValuedState],
) -> Result<PartitionLogic, StatesError> {
    check_states(d, states)?;
    let partitions = d
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|&a| {
                    (0..states.len())
                        .filter(|&k| states[k].get(a))
                        .collect::<Vec<_>>()
                })
                .filter(|cell| !cell.is_empty())
                .collect()
        })
        .collect();
    Ok(PartitionLogic::new(state_labels(states.len()), partitions)?)
}

/// A nonnegative rational valuation of atoms summing to 1 on every block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalState {
    values: Vec<Rational>,
}

impl RationalState {
    pub fn new(d: &Diagram, values: Vec<Rational>) -> Result<Self, StatesError> {
        if values.len() != d.atoms().len() {
            return Err(StatesError::DimensionMismatch {
                expected: d.atoms().len(),
                found: values.len(),
            });
        }
        if let Some(a) = values.iter().position(Signed::is_negative) {
            return Err(StatesError::NegativeValue(d.atoms()[a].clone()));
        }
        for (j, block) in d.blocks().iter().enumerate() {
            let sum = block.iter().fold(Rational::zero(), |s, &a| s + &values[a]);
            if !sum.is_one() {
                return Err(StatesError::BlockSum { block: j, sum });
            }
        }
        Ok(RationalState { values })
    }

    pub fn from_two_valued(s: &TwoValuedState) -> Self {
        let values = s
            .values()
            .iter()
            .map(|&v| if v { Rational::one() } else { Rational::zero() })
            .collect();
        RationalState { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Parses a state file: atom values in atom order, separated by commas
    /// and/or whitespace, each an integer or a `p/q` fraction. Lines may be
    /// split freely and `#` starts a comment.
    pub fn parse(src: &str, d: &Diagram) -> Result<Self, FormatError> {
        let mut values = Vec::new();
        for (line, tokens) in directives(src) {
            for tok in tokens
                .iter()
                .flat_map(|t| t.split(','))
                .filter(|t| !t.is_empty())
            {
                let v = Rational::from_str(tok)
                    .map_err(|_| FormatError::syntax(line, format!("`{tok}` is not a rational")))?;
                values.push(v);
            }
        }
        RationalState::new(d, values).map_err(FormatError::invalid)
    }
}

impl fmt::Display for RationalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Outcome of [`convex_membership`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// `target = Σ weights[k] · states[k]` with nonnegative weights summing to 1.
    Feasible { weights: Vec<Rational> },
    /// A separating hyperplane: `coefficients · m <= bound` for every state
    /// `m`, while `coefficients · target > bound`.
    Infeasible {
        coefficients: Vec<Rational>,
        bound: Rational,
    },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }

    /// Checks the witness exactly.
    pub fn verify(&self, target: &RationalState, states: &[TwoValuedState]) -> bool {
        let n = target.values.len();
        if states.iter().any(|s| s.values().len() != n) {
            return false;
        }
        match self {
            FeasibilityResult::Feasible { weights } => {
                weights.len() == states.len()
                    && weights.iter().all(|w| !w.is_negative())
                    && weights.iter().fold(Rational::zero(), |s, w| s + w).is_one()
                    && (0..n).all(|a| {
                        let mix = states
                            .iter()
                            .zip(weights)
                            .filter(|(s, _)| s.get(a))
                            .fold(Rational::zero(), |acc, (_, w)| acc + w);
                        mix == target.values[a]
                    })
            }
            FeasibilityResult::Infeasible {
                coefficients,
                bound,
            } => {
                let dot_state = |s: &TwoValuedState| {
                    (0..n)
                        .filter(|&a| s.get(a))
                        .fold(Rational::zero(), |acc, a| acc + &coefficients[a])
                };
                let dot_target = (0..n).fold(Rational::zero(), |acc, a| {
                    acc + &coefficients[a] * &target.values[a]
                });
                coefficients.len() == n
                    && states.iter().all(|s| dot_state(s) <= *bound)
                    && dot_target > *bound
            }
        }
    }
}

/// Decides whether `target` is a convex combination of `states`, exactly.
pub fn convex_membership(
    target: &RationalState,
    states: &[TwoValuedState],
) -> Result<FeasibilityResult, StatesError> {
    let n = target.values.len();
    if let Some(s) = states.iter().find(|s| s.values().len() != n) {
        return Err(StatesError::DimensionMismatch {
            expected: n,
            found: s.values().len(),
        });
    }
    let indicator = |v: bool| if v { Rational::one() } else { Rational::zero() };
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|atom| states.iter().map(|s| indicator(s.get(atom))).collect())
        .collect();
    a.push(vec![Rational::one(); states.len()]);
    let mut b = target.values.clone();
    b.push(Rational::one());

    let result = match simplex::feasibility(&a, &b) {
        Phase1::Feasible(weights) => FeasibilityResult::Feasible { weights },
        Phase1::Infeasible(mut y) => {
            let last = y.pop().expect("normalization row");
            FeasibilityResult::Infeasible {
                coefficients: y,
                bound: -last,
            }
        }
    };
    assert!(
        result.verify(target, states),
        "simplex produced an unverifiable witness"
    );
    Ok(result)
}
