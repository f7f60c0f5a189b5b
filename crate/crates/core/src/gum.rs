//! Generalized urn models.
//!
//! A GUM is a set of ball types, a set of colors and a symbol alphabet,
//! together with a total lookup `Λ(ball, color) = symbol`. Looking at a
//! ball through the eyeglass of one color shows only that color's symbol,
//! so each color partitions the ball types by the symbol they show.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::logic::{Diagram, LogicError, Partition, PartitionLogic};
use crate::states::{self, StatesError, TwoValuedState};
use crate::text::{directives, FormatError};

/// Display glyph for "no symbol in this color" in coloring tables.
pub const BLANK: &str = "∗";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GumError {
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("unknown ball type `{0}`")]
    UnknownBallType(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("{kind} `{label}` declared twice")]
    Duplicate { kind: &'static str, label: String },
    #[error("ball `{ball}` has no symbol for color `{color}`")]
    MissingEntry { ball: String, color: String },
    #[error("ball `{ball}` has two symbols for color `{color}`")]
    RepeatedEntry { ball: String, color: String },
    #[error("a GUM needs at least one ball type and one color")]
    Empty,
    #[error("malformed lookup table: {0}")]
    Shape(String),
    #[error(transparent)]
    States(#[from] StatesError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gum {
    ball_types: Vec<String>,
    colors: Vec<String>,
    symbols: Vec<String>,
    /// `lookup[u][c]` is a symbol index.
    lookup: Vec<Vec<usize>>,
}

pub(crate) fn index_labels<'a>(
    kind: &'static str,
    labels: &'a [String],
) -> Result<HashMap<&'a str, usize>, GumError> {
    let mut map = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if map.insert(l.as_str(), i).is_some() {
            return Err(GumError::Duplicate {
                kind,
                label: l.clone(),
            });
        }
    }
    Ok(map)
}

impl Gum {
    /// `rows[u][c]` is the symbol label ball type `u` shows in color `c`.
    pub fn new<S: AsRef<str>>(
        ball_types: Vec<String>,
        colors: Vec<String>,
        symbols: Vec<String>,
        rows: &[Vec<S>],
    ) -> Result<Self, GumError> {
        let sym = index_labels("symbol", &symbols)?;
        if rows.len() != ball_types.len() {
            return Err(GumError::Shape(format!(
                "{} rows for {} ball types",
                rows.len(),
                ball_types.len()
            )));
        }
        let mut lookup = Vec::with_capacity(rows.len());
        for (u, row) in rows.iter().enumerate() {
            if row.len() != colors.len() {
                let color = colors.get(row.len()).cloned().unwrap_or_default();
                return Err(GumError::MissingEntry {
                    ball: ball_types.get(u).cloned().unwrap_or_default(),
                    color,
                });
            }
            let r = row
                .iter()
                .map(|s| {
                    sym.get(s.as_ref())
                        .copied()
                        .ok_or_else(|| GumError::UnknownSymbol(s.as_ref().to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            lookup.push(r);
        }
        Self::from_indices(ball_types, colors, symbols, lookup)
    }

    pub fn from_indices(
        ball_types: Vec<String>,
        colors: Vec<String>,
        symbols: Vec<String>,
        lookup: Vec<Vec<usize>>,
    ) -> Result<Self, GumError> {
        if ball_types.is_empty() || colors.is_empty() {
            return Err(GumError::Empty);
        }
        index_labels("ball type", &ball_types)?;
        index_labels("color", &colors)?;
        index_labels("symbol", &symbols)?;
        if lookup.len() != ball_types.len() {
            return Err(GumError::Shape(format!(
                "{} rows for {} ball types",
                lookup.len(),
                ball_types.len()
            )));
        }
        for (u, row) in lookup.iter().enumerate() {
            if row.len() != colors.len() || row.iter().any(|&v| v >= symbols.len()) {
                return Err(GumError::Shape(format!("row of ball `{}`", ball_types[u])));
            }
        }
        Ok(Gum {
            ball_types,
            colors,
            symbols,
            lookup,
        })
    }

    pub fn ball_types(&self) -> &[String] {
        &self.ball_types
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Symbol index for ball index `u` in color index `c`.
    pub fn lookup(&self, u: usize, c: usize) -> usize {
        self.lookup[u][c]
    }

    pub fn color_index(&self, color: &str) -> Result<usize, GumError> {
        self.colors
            .iter()
            .position(|c| c == color)
            .ok_or_else(|| GumError::UnknownColor(color.to_string()))
    }

    pub fn ball_index(&self, ball: &str) -> Result<usize, GumError> {
        self.ball_types
            .iter()
            .position(|u| u == ball)
            .ok_or_else(|| GumError::UnknownBallType(ball.to_string()))
    }

    /// The symbol ball type `ball` shows through the eyeglass of `color`.
    pub fn observe(&self, ball: &str, color: &str) -> Result<&str, GumError> {
        let u = self.ball_index(ball)?;
        let c = self.color_index(color)?;
        Ok(&self.symbols[self.lookup[u][c]])
    }

    /// Ball types grouped by the symbol they show in `color`.
    pub fn color_partition(&self, color: &str) -> Result<Partition, GumError> {
        Ok(self.partition_of(self.color_index(color)?))
    }

    fn partition_of(&self, c: usize) -> Partition {
        group_by_value((0..self.ball_types.len()).map(|u| self.lookup[u][c]))
    }

    /// Pasting of all color partitions, over the ball types.
    pub fn logic(&self) -> Result<PartitionLogic, GumError> {
        let parts = (0..self.colors.len())
            .map(|c| self.partition_of(c))
            .collect();
        Ok(PartitionLogic::new(self.ball_types.clone(), parts)?)
    }

    /// Wright's constancy axiom: a symbol that occurs in two colors appears
    /// in both on exactly the same balls.
    pub fn satisfies_constancy(&self) -> bool {
        let nc = self.colors.len();
        let occurs =
            |v: usize, c: usize| (0..self.ball_types.len()).any(|u| self.lookup[u][c] == v);
        (0..self.ball_types.len()).all(|u| {
            (0..nc).all(|c| {
                let v = self.lookup[u][c];
                (0..nc).all(|c2| c2 == c || !occurs(v, c2) || self.lookup[u][c2] == v)
            })
        })
    }

    /// Coloring table in the per-symbol layout: for every color one column
    /// per symbol, holding the symbol where the ball shows it and [`BLANK`]
    /// elsewhere.
    pub fn coloring_table(&self) -> String {
        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut header = vec!["ball".to_string()];
        for c in &self.colors {
            header.extend(self.symbols.iter().map(|v| format!("{c}:{v}")));
        }
        rows.push(header);
        for (u, b) in self.ball_types.iter().enumerate() {
            let mut row = vec![b.clone()];
            for c in 0..self.colors.len() {
                row.extend((0..self.symbols.len()).map(|v| {
                    if self.lookup[u][c] == v {
                        self.symbols[v].clone()
                    } else {
                        BLANK.to_string()
                    }
                }));
            }
            rows.push(row);
        }
        align(&rows)
    }

    /// Parses the GUM text format:
    ///
    /// ```text
    /// colors red green
    /// symbols 1 2 3 4 5
    /// ball 1 : red=1 green=3
    /// ```
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let mut colors: Option<Vec<String>> = None;
        let mut symbols: Option<Vec<String>> = None;
        let mut balls: Vec<(usize, String, Vec<&str>)> = Vec::new();
        for (line, tokens) in directives(src) {
            match tokens[0] {
                "colors" | "symbols" => {
                    let slot = if tokens[0] == "colors" {
                        &mut colors
                    } else {
                        &mut symbols
                    };
                    if slot.is_some() {
                        return Err(FormatError::syntax(
                            line,
                            format!("`{}` given more than once", tokens[0]),
                        ));
                    }
                    *slot = Some(tokens[1..].iter().map(|s| s.to_string()).collect());
                }
                "ball" => {
                    if tokens.len() < 3 || tokens[2] != ":" {
                        return Err(FormatError::syntax(
                            line,
                            "expected `ball <u> : <c>=<v> ...`",
                        ));
                    }
                    balls.push((line, tokens[1].to_string(), tokens[3..].to_vec()));
                }
                other => {
                    return Err(FormatError::syntax(
                        line,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        let colors = colors.ok_or_else(|| FormatError::syntax(0, "missing `colors` line"))?;
        let symbols = symbols.ok_or_else(|| FormatError::syntax(0, "missing `symbols` line"))?;
        let color_ix = index_labels("color", &colors).map_err(FormatError::invalid)?;
        let mut names = Vec::with_capacity(balls.len());
        let mut rows = Vec::with_capacity(balls.len());
        for (line, name, entries) in balls {
            let mut row: Vec<Option<&str>> = vec![None; colors.len()];
            for e in entries {
                let (c, v) = e.split_once('=').ok_or_else(|| {
                    FormatError::syntax(line, format!("expected `<color>=<symbol>`, found `{e}`"))
                })?;
                let &ci = color_ix
                    .get(c)
                    .ok_or_else(|| FormatError::invalid(GumError::UnknownColor(c.to_string())))?;
                if row[ci].replace(v).is_some() {
                    return Err(FormatError::invalid(GumError::RepeatedEntry {
                        ball: name.clone(),
                        color: c.to_string(),
                    }));
                }
            }
            if let Some(ci) = row.iter().position(Option::is_none) {
                return Err(FormatError::invalid(GumError::MissingEntry {
                    ball: name,
                    color: colors[ci].clone(),
                }));
            }
            rows.push(
                row.into_iter()
                    .map(|v| v.expect("checked"))
                    .collect::<Vec<_>>(),
            );
            names.push(name);
        }
        Gum::new(names, colors, symbols, &rows).map_err(FormatError::invalid)
    }
}

impl fmt::Display for Gum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "colors {}", self.colors.join(" "))?;
        writeln!(f, "symbols {}", self.symbols.join(" "))?;
        for (u, b) in self.ball_types.iter().enumerate() {
            write!(f, "ball {b} :")?;
            for (c, color) in self.colors.iter().enumerate() {
                write!(f, " {color}={}", self.symbols[self.lookup[u][c]])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Groups positions by value; cells ordered by first position.
pub(crate) fn group_by_value(values: impl Iterator<Item = usize>) -> Partition {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut cell_of: HashMap<usize, usize> = HashMap::new();
    for (x, v) in values.enumerate() {
        let next = cells.len();
        let k = *cell_of.entry(v).or_insert(next);
        if k == next {
            cells.push(Vec::new());
        }
        cells[k].push(x);
    }
    cells
}

pub(crate) fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Result of [`gum_from_states`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GumSynthesis {
    pub gum: Gum,
    /// Atoms no state values 1; their symbols are never painted. Non-empty
    /// means the state set is not unital.
    pub unpainted_atoms: Vec<String>,
}

/// Paints one ball type per state, one color `c1..ct` per block and one
/// symbol per atom: ball `k` shows, in the color of block `j`, the symbol
/// of the atom of block `j` that state `m_k` values 1. An atom shared by
/// several blocks thus appears with the same symbol in each of their colors.
pub fn gum_from_states(d: &Diagram, states: &[TwoValuedState]) -> Result<GumSynthesis, GumError> {
    states::check_states(d, states)?;
    let colors: Vec<String> = (1..=d.blocks().len()).map(|j| format!("c{j}")).collect();
    let lookup = states
        .iter()
        .map(|m| {
            d.blocks()
                .iter()
                .map(|block| m.true_atom(block).expect("valid two-valued state"))
                .collect()
        })
        .collect();
    let gum = Gum::from_indices(
        states::state_labels(states.len()),
        colors,
        d.atoms().to_vec(),
        lookup,
    )?;
    let unpainted_atoms = states::never_true_atoms(states, d)
        .into_iter()
        .map(|a| d.atoms()[a].clone())
        .collect();
    Ok(GumSynthesis {
        gum,
        unpainted_atoms,
    })
}
