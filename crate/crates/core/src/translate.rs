//! Direct translations between GUMs and Mealy automata through explicit
//! bijections of ball types and states, colors and inputs, and symbols and
//! outputs. Going GUM → automaton → GUM with the inverse bijections gives
//! back the original lookup function.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::automaton::{AutomatonError, MealyAutomaton};
use crate::gum::{Gum, GumError};
use crate::text::{directives, FormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("{component} map has {found} pairs, but the model has {expected} elements")]
    BijectionArityMismatch {
        component: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{component} map is not a bijection onto the model: {reason}")]
    NotABijection {
        component: &'static str,
        reason: String,
    },
    #[error(transparent)]
    Gum(#[from] GumError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// A finite bijection given by its pairs `from -> to`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Bijection {
    pairs: Vec<(String, String)>,
}

impl Bijection {
    pub fn new(pairs: Vec<(String, String)>) -> Self {
        Bijection { pairs }
    }

    pub fn identity(labels: &[String]) -> Self {
        Bijection::new(labels.iter().map(|l| (l.clone(), l.clone())).collect())
    }

    /// Maps the k-th label to the decimal string `k` (0-based).
    pub fn positional(labels: &[String]) -> Self {
        Bijection::new(
            labels
                .iter()
                .enumerate()
                .map(|(k, l)| (l.clone(), k.to_string()))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn forward(&self, from: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(f, _)| f == from)
            .map(|(_, t)| t.as_str())
    }

    pub fn backward(&self, to: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(_, t)| t == to)
            .map(|(f, _)| f.as_str())
    }

    pub fn inverse(&self) -> Self {
        Bijection::new(
            self.pairs
                .iter()
                .map(|(f, t)| (t.clone(), f.clone()))
                .collect(),
        )
    }

    /// Images of `domain`, in order, after checking that the pairs form a
    /// bijection whose domain is exactly `domain`.
    fn images(
        &self,
        component: &'static str,
        domain: &[String],
    ) -> Result<Vec<String>, TranslateError> {
        if self.pairs.len() != domain.len() {
            return Err(TranslateError::BijectionArityMismatch {
                component,
                expected: domain.len(),
                found: self.pairs.len(),
            });
        }
        let bad = |reason: String| TranslateError::NotABijection { component, reason };
        let mut targets = HashSet::new();
        for (_, t) in &self.pairs {
            if !targets.insert(t.as_str()) {
                return Err(bad(format!("`{t}` is hit twice")));
            }
        }
        let mut sources = HashSet::new();
        for (f, _) in &self.pairs {
            if !sources.insert(f.as_str()) {
                return Err(bad(format!("`{f}` is mapped twice")));
            }
        }
        domain
            .iter()
            .map(|x| {
                self.forward(x)
                    .map(str::to_string)
                    .ok_or_else(|| bad(format!("`{x}` is not mapped")))
            })
            .collect()
    }
}

/// Bijections for the three components of a model translation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TranslationMap {
    /// Ball types ↔ automaton states.
    pub ground: Bijection,
    /// Colors ↔ inputs.
    pub context: Bijection,
    /// Symbols ↔ outputs.
    pub symbol: Bijection,
}

impl TranslationMap {
    pub fn inverse(&self) -> Self {
        TranslationMap {
            ground: self.ground.inverse(),
            context: self.context.inverse(),
            symbol: self.symbol.inverse(),
        }
    }

    fn sections(&self) -> [(&'static str, &Bijection); 3] {
        [
            ("ground", &self.ground),
            ("context", &self.context),
            ("symbol", &self.symbol),
        ]
    }

    /// Parses the translation-map format:
    ///
    /// ```text
    /// maps ground
    /// map 1 -> 1
    /// maps context
    /// map red -> 0
    /// maps symbol
    /// map 1 -> 1
    /// ```
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let mut map = TranslationMap::default();
        let mut seen = [false; 3];
        let mut current: Option<usize> = None;
        for (line, tokens) in directives(src) {
            match tokens[..] {
                ["maps", name] => {
                    let k = ["ground", "context", "symbol"]
                        .iter()
                        .position(|&s| s == name)
                        .ok_or_else(|| {
                            FormatError::syntax(line, format!("unknown map section `{name}`"))
                        })?;
                    if std::mem::replace(&mut seen[k], true) {
                        return Err(FormatError::syntax(
                            line,
                            format!("section `{name}` given twice"),
                        ));
                    }
                    current = Some(k);
                }
                ["map", from, "->", to] => {
                    let k = current.ok_or_else(|| {
                        FormatError::syntax(line, "`map` outside a `maps` section")
                    })?;
                    let slot = match k {
                        0 => &mut map.ground,
                        1 => &mut map.context,
                        _ => &mut map.symbol,
                    };
                    slot.pairs.push((from.to_string(), to.to_string()));
                }
                _ => {
                    return Err(FormatError::syntax(
                        line,
                        "expected `maps <section>` or `map <from> -> <to>`",
                    ))
                }
            }
        }
        Ok(map)
    }
}

impl fmt::Display for TranslationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, b) in self.sections() {
            writeln!(f, "maps {name}")?;
            for (from, to) in &b.pairs {
                writeln!(f, "map {from} -> {to}")?;
            }
        }
        Ok(())
    }
}

/// GUM → automaton: `λ(s, i) = t_O(Λ(t_S⁻¹(s), t_I⁻¹(i)))` and every
/// transition goes to the first state.
///
/// Without an explicit map, ball types and symbols keep their labels and
/// the k-th color becomes input `k` (0-based).
pub fn gum_to_automaton(
    g: &Gum,
    map: Option<&TranslationMap>,
) -> Result<(MealyAutomaton, TranslationMap), TranslateError> {
    let map = match map {
        Some(m) => m.clone(),
        None => TranslationMap {
            ground: Bijection::identity(g.ball_types()),
            context: Bijection::positional(g.colors()),
            symbol: Bijection::identity(g.symbols()),
        },
    };
    let states = map.ground.images("ground", g.ball_types())?;
    let inputs = map.context.images("context", g.colors())?;
    let outputs = map.symbol.images("symbol", g.symbols())?;
    // Positional images keep indices aligned: state k is ball k, input c is
    // color c, output v is symbol v.
    let nc = g.colors().len();
    let lambda = (0..g.ball_types().len())
        .map(|u| (0..nc).map(|c| g.lookup(u, c)).collect())
        .collect();
    let delta = vec![vec![0; nc]; g.ball_types().len()];
    let a = MealyAutomaton::new(states, inputs, outputs, delta, lambda)?;
    Ok((a, map))
}

/// Automaton → GUM: `Λ(u, c) = τ_L(λ(τ_U⁻¹(u), τ_C⁻¹(c)))`. The transition
/// function is dropped. Without an explicit map all labels are kept.
pub fn automaton_to_gum(
    a: &MealyAutomaton,
    map: Option<&TranslationMap>,
) -> Result<(Gum, TranslationMap), TranslateError> {
    let map = match map {
        Some(m) => m.clone(),
        None => TranslationMap {
            ground: Bijection::identity(a.states()),
            context: Bijection::identity(a.inputs()),
            symbol: Bijection::identity(a.outputs()),
        },
    };
    let balls = map.ground.images("ground", a.states())?;
    let colors = map.context.images("context", a.inputs())?;
    let symbols = map.symbol.images("symbol", a.outputs())?;
    let ni = a.inputs().len();
    let lookup = (0..a.states().len())
        .map(|s| (0..ni).map(|i| a.lambda(s, i)).collect())
        .collect();
    let g = Gum::from_indices(balls, colors, symbols, lookup)?;
    Ok((g, map))
}

/// GUM → automaton → GUM with the inverse maps reproduces every
/// `Λ(u, c)`.
pub fn verify_round_trip(g: &Gum) -> bool {
    let Ok((a, map)) = gum_to_automaton(g, None) else {
        return false;
    };
    let Ok((back, _)) = automaton_to_gum(&a, Some(&map.inverse())) else {
        return false;
    };
    back.ball_types() == g.ball_types()
        && back.colors() == g.colors()
        && back.symbols() == g.symbols()
        && g.ball_types().iter().all(|u| {
            g.colors()
                .iter()
                .all(|c| back.observe(u, c).ok() == g.observe(u, c).ok())
        })
}
