//! Finite empirical logics in two representations.
//!
//! A [`Diagram`] is the hypergraph form: atoms plus blocks (contexts),
//! each block a set of atoms. A [`PartitionLogic`] is the model-side form:
//! a ground set together with a family of partitions of it. Cells that are
//! equal as sets are the same atom no matter which partition they come
//! from, which is exactly the pasting of the partitions' Boolean algebras.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::canon::{self, Graph};
use crate::text::{directives, FormatError};

/// One partition of a ground set, as cells of ground indices.
///
/// Normalized partitions keep each cell sorted ascending and order cells by
/// their smallest element.
pub type Partition = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("block {block} mentions unknown atom `{atom}`")]
    UnknownAtomInBlock { block: usize, atom: String },
    #[error("block {block} lists atom `{atom}` twice")]
    DuplicateAtomInBlock { block: usize, atom: String },
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("atom `{0}` belongs to no block")]
    IsolatedAtom(String),
    #[error("ground set is empty")]
    EmptyGround,
    #[error("ground element `{0}` declared twice")]
    DuplicateGround(String),
    #[error("partition {partition} mentions unknown ground element `{element}`")]
    UnknownGround { partition: usize, element: String },
    #[error("partition {partition} is not a partition of the ground set: {reason}")]
    NotAPartition { partition: usize, reason: String },
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
}

/// Atom/block hypergraph of a logic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    atoms: Vec<String>,
    /// Atom indices of each block, ascending.
    blocks: Vec<Vec<usize>>,
}

impl Diagram {
    /// Builds a diagram from atom labels and blocks given as atom labels.
    ///
    /// Blocks equal as sets are collapsed into the first occurrence. Atom
    /// order is kept as declared and block members are stored in atom order.
    pub fn new<A, B, S>(atoms: A, blocks: B) -> Result<Self, LogicError>
    where
        A: IntoIterator,
        A::Item: Into<String>,
        B: IntoIterator,
        B::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(atoms.len());
        for (i, a) in atoms.iter().enumerate() {
            if index.insert(a.as_str(), i).is_some() {
                return Err(LogicError::DuplicateAtom(a.clone()));
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (b, block) in blocks.into_iter().enumerate() {
            let mut members = Vec::new();
            for label in block {
                let label = label.as_ref();
                let &i = index
                    .get(label)
                    .ok_or_else(|| LogicError::UnknownAtomInBlock {
                        block: b,
                        atom: label.to_string(),
                    })?;
                if members.contains(&i) {
                    return Err(LogicError::DuplicateAtomInBlock {
                        block: b,
                        atom: label.to_string(),
                    });
                }
                members.push(i);
            }
            if members.is_empty() {
                return Err(LogicError::EmptyBlock(b));
            }
            members.sort_unstable();
            if !out.contains(&members) {
                out.push(members);
            }
        }
        Self::from_indices(atoms, out)
    }

    fn from_indices(atoms: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self, LogicError> {
        let mut covered = vec![false; atoms.len()];
        for &a in blocks.iter().flatten() {
            covered[a] = true;
        }
        if let Some(a) = covered.iter().position(|c| !c) {
            return Err(LogicError::IsolatedAtom(atoms[a].clone()));
        }
        Ok(Diagram { atoms, blocks })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn atom_index(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    /// Indices of the blocks containing `atom`.
    pub fn blocks_of(&self, atom: usize) -> impl Iterator<Item = usize> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .filter(move |(_, b)| b.contains(&atom))
            .map(|(j, _)| j)
    }

    /// Parses the logic text format:
    ///
    /// ```text
    /// atoms 1 2 3 4 5
    /// block 1 2 5
    /// block 3 4 5
    /// ```
    pub fn parse(src: &str) -> Result<Self, FormatError> {
        let mut atoms: Option<Vec<&str>> = None;
        let mut blocks: Vec<Vec<&str>> = Vec::new();
        for (line, tokens) in directives(src) {
            match tokens[0] {
                "atoms" if atoms.is_some() => {
                    return Err(FormatError::syntax(line, "`atoms` given more than once"))
                }
                "atoms" => atoms = Some(tokens[1..].to_vec()),
                "block" if atoms.is_none() => {
                    return Err(FormatError::syntax(line, "`block` before `atoms`"))
                }
                "block" => blocks.push(tokens[1..].to_vec()),
                other => {
                    return Err(FormatError::syntax(
                        line,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        let atoms = atoms.ok_or_else(|| FormatError::syntax(0, "missing `atoms` line"))?;
        Diagram::new(atoms.into_iter().map(str::to_string), blocks).map_err(FormatError::invalid)
    }

    fn graph(&self) -> Graph {
        let n = self.atoms.len();
        let mut colors = vec![0; n];
        colors.extend(std::iter::repeat_n(1, self.blocks.len()));
        let mut g = Graph::new(colors);
        for (j, block) in self.blocks.iter().enumerate() {
            for &a in block {
                g.add_edge(a, n + j);
            }
        }
        g.finish()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "atoms")?;
        for a in &self.atoms {
            write!(f, " {a}")?;
        }
        writeln!(f)?;
        for block in &self.blocks {
            write!(f, "block")?;
            for &a in block {
                write!(f, " {}", self.atoms[a])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Ground set plus a family of partitions, pasted along equal cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionLogic {
    ground: Vec<String>,
    partitions: Vec<Partition>,
}

impl PartitionLogic {
    /// Builds a logic from partitions given as ground indices.
    ///
    /// Each partition is normalized (sorted cells, cells ordered by first
    /// ground element) and duplicate partitions are collapsed into the
    /// first occurrence.
    pub fn new(ground: Vec<String>, partitions: Vec<Partition>) -> Result<Self, LogicError> {
        if ground.is_empty() {
            return Err(LogicError::EmptyGround);
        }
        let mut seen = HashMap::with_capacity(ground.len());
        for g in &ground {
            if seen.insert(g.as_str(), ()).is_some() {
                return Err(LogicError::DuplicateGround(g.clone()));
            }
        }
        let n = ground.len();
        let mut out: Vec<Partition> = Vec::new();
        for (p, mut cells) in partitions.into_iter().enumerate() {
            let mut hit = vec![false; n];
            for cell in &mut cells {
                if cell.is_empty() {
                    return Err(not_a_partition(p, "empty cell"));
                }
                for &x in cell.iter() {
                    if x >= n {
                        return Err(not_a_partition(p, format!("index {x} out of range")));
                    }
                    if std::mem::replace(&mut hit[x], true) {
                        return Err(not_a_partition(p, format!("`{}` covered twice", ground[x])));
                    }
                }
                cell.sort_unstable();
            }
            if let Some(x) = hit.iter().position(|h| !h) {
                return Err(not_a_partition(p, format!("`{}` not covered", ground[x])));
            }
            cells.sort_unstable_by_key(|c| c[0]);
            if !out.contains(&cells) {
                out.push(cells);
            }
        }
        Ok(PartitionLogic {
            ground,
            partitions: out,
        })
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// Distinct cells, in order of first appearance scanning partitions and
    /// then cells.
    pub fn atoms(&self) -> Vec<Vec<usize>> {
        let mut atoms: Vec<Vec<usize>> = Vec::new();
        for cell in self.partitions.iter().flatten() {
            if !atoms.contains(cell) {
                atoms.push(cell.clone());
            }
        }
        atoms
    }

    /// Label of a cell, e.g. `{1,2}`.
    pub fn cell_label(&self, cell: &[usize]) -> String {
        let names: Vec<&str> = cell.iter().map(|&x| self.ground[x].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Diagram with one atom per distinct cell and one block per partition.
    pub fn diagram(&self) -> Diagram {
        let atoms = self.atoms();
        let blocks: Vec<Vec<usize>> = self
            .partitions
            .iter()
            .map(|p| {
                let mut b: Vec<usize> = p
                    .iter()
                    .map(|c| atoms.iter().position(|a| a == c).expect("cell is an atom"))
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        let labels = atoms.iter().map(|c| self.cell_label(c)).collect();
        Diagram::from_indices(labels, blocks).expect("every cell lies in its partition's block")
    }

    fn check_limits(&self, limits: &SearchLimits) -> Result<(), LogicError> {
        if self.ground.len() > limits.max_ground {
            return Err(LogicError::SizeLimitExceeded(format!(
                "ground size {} > {}",
                self.ground.len(),
                limits.max_ground
            )));
        }
        if self.partitions.len() > limits.max_partitions {
            return Err(LogicError::SizeLimitExceeded(format!(
                "{} partitions > {}",
                self.partitions.len(),
                limits.max_partitions
            )));
        }
        Ok(())
    }

    /// Ground vertices, then atom vertices, then partition vertices.
    fn graph(&self) -> Graph {
        let n = self.ground.len();
        let atoms = self.atoms();
        let k = atoms.len();
        let mut colors = vec![0; n];
        colors.extend(std::iter::repeat_n(1, k));
        colors.extend(std::iter::repeat_n(2, self.partitions.len()));
        let mut g = Graph::new(colors);
        for (a, cell) in atoms.iter().enumerate() {
            for &x in cell {
                g.add_edge(x, n + a);
            }
        }
        for (p, cells) in self.partitions.iter().enumerate() {
            for cell in cells {
                let a = atoms
                    .iter()
                    .position(|c| c == cell)
                    .expect("cell is an atom");
                g.add_edge(n + a, n + k + p);
            }
        }
        g.finish()
    }

    /// Partitions relabelled through `rank` (ground index -> new index),
    /// with cells and partitions sorted.
    fn relabelled(&self, rank: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let mut ps: Vec<Vec<Vec<usize>>> = self
            .partitions
            .iter()
            .map(|p| {
                let mut cells: Vec<Vec<usize>> = p
                    .iter()
                    .map(|c| {
                        let mut c: Vec<usize> = c.iter().map(|&x| rank[x]).collect();
                        c.sort_unstable();
                        c
                    })
                    .collect();
                cells.sort_unstable();
                cells
            })
            .collect();
        ps.sort_unstable();
        ps
    }
}

fn not_a_partition(partition: usize, reason: impl Into<String>) -> LogicError {
    LogicError::NotAPartition {
        partition,
        reason: reason.into(),
    }
}

/// Pastes labelled partitions of `ground` into a partition logic.
pub fn paste_partitions<G, P, C, S>(ground: G, partitions: P) -> Result<PartitionLogic, LogicError>
where
    G: IntoIterator,
    G::Item: Into<String>,
    P: IntoIterator,
    P::Item: IntoIterator<Item = C>,
    C: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let ground: Vec<String> = ground.into_iter().map(Into::into).collect();
    let index: HashMap<&str, usize> = ground
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_str(), i))
        .collect();
    let mut parts = Vec::new();
    for (p, partition) in partitions.into_iter().enumerate() {
        let mut cells = Vec::new();
        for cell in partition {
            let mut c = Vec::new();
            for e in cell {
                let e = e.as_ref();
                let &i = index.get(e).ok_or_else(|| LogicError::UnknownGround {
                    partition: p,
                    element: e.to_string(),
                })?;
                c.push(i);
            }
            cells.push(c);
        }
        parts.push(cells);
    }
    PartitionLogic::new(ground, parts)
}

/// Hypergraph form of a partition logic; see [`PartitionLogic::diagram`].
pub fn diagram_of_logic(pl: &PartitionLogic) -> Diagram {
    pl.diagram()
}

/// Bounds on isomorphism and canonical-form searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_ground: usize,
    pub max_partitions: usize,
    /// Search-tree nodes visited before giving up.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_ground: 64,
            max_partitions: 32,
            max_nodes: 1 << 20,
        }
    }
}

/// Isomorphism between two partition logics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    /// `ground_map[x]` is the ground index in the target logic.
    pub ground_map: Vec<usize>,
    /// `partition_map[p]` is the partition index in the target logic.
    pub partition_map: Vec<usize>,
}

impl IsoWitness {
    pub fn identity(pl: &PartitionLogic) -> Self {
        IsoWitness {
            ground_map: (0..pl.ground.len()).collect(),
            partition_map: (0..pl.partitions.len()).collect(),
        }
    }

    /// Checks the witness by direct substitution.
    pub fn verify(&self, a: &PartitionLogic, b: &PartitionLogic) -> bool {
        if !is_bijection(&self.ground_map, b.ground.len())
            || a.ground.len() != b.ground.len()
            || !is_bijection(&self.partition_map, b.partitions.len())
            || a.partitions.len() != b.partitions.len()
        {
            return false;
        }
        a.partitions.iter().enumerate().all(|(p, cells)| {
            let mut image: Partition = cells
                .iter()
                .map(|c| {
                    let mut c: Vec<usize> = c.iter().map(|&x| self.ground_map[x]).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            image.sort_unstable_by_key(|c| c[0]);
            image == b.partitions[self.partition_map[p]]
        })
    }
}

fn is_bijection(map: &[usize], target: usize) -> bool {
    if map.len() != target {
        return false;
    }
    let mut hit = vec![false; target];
    map.iter()
        .all(|&y| y < target && !std::mem::replace(&mut hit[y], true))
}

/// Searches for a ground relabelling plus partition reindexing mapping `a`
/// onto `b`. `Ok(None)` means the logics are not isomorphic.
pub fn logics_isomorphic(
    a: &PartitionLogic,
    b: &PartitionLogic,
) -> Result<Option<IsoWitness>, LogicError> {
    logics_isomorphic_with(a, b, &SearchLimits::default())
}

pub fn logics_isomorphic_with(
    a: &PartitionLogic,
    b: &PartitionLogic,
    limits: &SearchLimits,
) -> Result<Option<IsoWitness>, LogicError> {
    a.check_limits(limits)?;
    b.check_limits(limits)?;
    if a.ground.len() != b.ground.len() || a.partitions.len() != b.partitions.len() {
        return Ok(None);
    }
    let map = canon::find_isomorphism(&a.graph(), &b.graph(), limits.max_nodes)
        .map_err(|_| budget_error(limits))?;
    let Some(map) = map else { return Ok(None) };
    let n = a.ground.len();
    let (ka, kb) = (a.atoms().len(), b.atoms().len());
    let witness = IsoWitness {
        ground_map: map[..n].to_vec(),
        partition_map: map[n + ka..].iter().map(|&v| v - n - kb).collect(),
    };
    debug_assert!(witness.verify(a, b));
    Ok(witness.verify(a, b).then_some(witness))
}

fn budget_error(limits: &SearchLimits) -> LogicError {
    LogicError::SizeLimitExceeded(format!("search exceeded {} nodes", limits.max_nodes))
}

/// Canonical byte string of a logic: equal for two logics exactly when
/// they are isomorphic.
///
/// The string is ASCII: the ground size, a colon, then the partitions of
/// the canonically relabelled logic (ground elements renamed `0..n`)
/// separated by `;`, cells within a partition separated by `|` and
/// elements within a cell by `,`. Cells and partitions appear in sorted
/// order. The one-element logic with the single partition `{{x}}` has the
/// form `1:0`.
pub fn canonical_form(pl: &PartitionLogic) -> Result<Vec<u8>, LogicError> {
    canonical_form_with(pl, &SearchLimits::default())
}

pub fn canonical_form_with(
    pl: &PartitionLogic,
    limits: &SearchLimits,
) -> Result<Vec<u8>, LogicError> {
    pl.check_limits(limits)?;
    let g = pl.graph();
    let n = pl.ground.len();
    let best = canon::canonical_min(&g, limits.max_nodes, |colors| {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&x| colors[x]);
        let mut rank = vec![0; n];
        for (r, &x) in order.iter().enumerate() {
            rank[x] = r;
        }
        pl.relabelled(&rank)
    })
    .map_err(|_| budget_error(limits))?;
    let parts: Vec<String> = best
        .iter()
        .map(|cells| {
            cells
                .iter()
                .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("|")
        })
        .collect();
    Ok(format!("{n}:{}", parts.join(";")).into_bytes())
}

/// Isomorphism between two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramIso {
    pub atom_map: Vec<usize>,
    pub block_map: Vec<usize>,
}

/// Hypergraph isomorphism of diagrams (atom bijection plus block bijection).
pub fn diagrams_isomorphic(a: &Diagram, b: &Diagram) -> Result<Option<DiagramIso>, LogicError> {
    let limits = SearchLimits::default();
    if a.atoms.len() != b.atoms.len() || a.blocks.len() != b.blocks.len() {
        return Ok(None);
    }
    let map = canon::find_isomorphism(&a.graph(), &b.graph(), limits.max_nodes)
        .map_err(|_| budget_error(&limits))?;
    Ok(map.map(|m| {
        let n = a.atoms.len();
        DiagramIso {
            atom_map: m[..n].to_vec(),
            block_map: m[n..].iter().map(|&v| v - n).collect(),
        }
    }))
}
