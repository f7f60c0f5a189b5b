//! Partition logics of generalized urn models (GUMs) and Mealy automata.
//!
//! Both kinds of model induce an empirical logic: every color (for a GUM)
//! or input symbol (for an automaton) partitions the ground set of ball
//! types or initial states, and the pasting of these partitions is the
//! logic. This crate derives those logics, enumerates two-valued states of
//! atom/block diagrams, synthesizes either model from any diagram with a
//! separating set of two-valued states, translates models into each other
//! through explicit bijections, and decides whether a rational state is a
//! convex mixture of two-valued states.
//!
//! Data-parallel loops (state enumeration subtrees, Monte-Carlo trials,
//! batch isomorphism checks) run on rayon when the `parallel` feature is
//! enabled (the default) and sequentially otherwise. Results are identical
//! either way; see [`Exec`].

pub mod automaton;
mod canon;
pub mod dot;
mod exec;
pub mod fixtures;
pub mod generate;
pub mod gum;
pub mod logic;
pub mod sim;
mod simplex;
pub mod states;
pub mod text;
pub mod translate;

pub use automaton::{AutomatonError, MealyAutomaton};
pub use exec::Exec;
pub use gum::{Gum, GumError};
pub use logic::{
    Diagram, DiagramIso, IsoWitness, LogicError, Partition, PartitionLogic, SearchLimits,
};
pub use sim::{Experiment, FrequencyReport, Model, SimError};
pub use states::{FeasibilityResult, RationalState, StatesError, TwoValuedState};
pub use text::FormatError;
pub use translate::{Bijection, TranslateError, TranslationMap};

/// Exact rational number used for priors, states and LP certificates.
pub type Rational = num_rational::BigRational;
