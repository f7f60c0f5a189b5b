//! Random small models and logics for property checks and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::MealyAutomaton;
use crate::gum::Gum;
use crate::logic::{Diagram, PartitionLogic};

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

/// GUM with `1..=max_balls` ball types, `1..=max_colors` colors and
/// `1..=max_symbols` symbols, lookup uniform over the symbols.
pub fn random_gum<R: Rng>(
    rng: &mut R,
    max_balls: usize,
    max_colors: usize,
    max_symbols: usize,
) -> Gum {
    let nu = rng.gen_range(1..=max_balls);
    let nc = rng.gen_range(1..=max_colors);
    let nl = rng.gen_range(1..=max_symbols);
    let lookup = (0..nu)
        .map(|_| (0..nc).map(|_| rng.gen_range(0..nl)).collect())
        .collect();
    Gum::from_indices(labels("u", nu), labels("c", nc), labels("v", nl), lookup)
        .expect("well-formed random GUM")
}

pub fn random_automaton<R: Rng>(
    rng: &mut R,
    max_states: usize,
    max_inputs: usize,
    max_outputs: usize,
) -> MealyAutomaton {
    let ns = rng.gen_range(1..=max_states);
    let ni = rng.gen_range(1..=max_inputs);
    let no = rng.gen_range(1..=max_outputs);
    let delta = (0..ns)
        .map(|_| (0..ni).map(|_| rng.gen_range(0..ns)).collect())
        .collect();
    let lambda = (0..ns)
        .map(|_| (0..ni).map(|_| rng.gen_range(0..no)).collect())
        .collect();
    MealyAutomaton::new(
        labels("s", ns),
        labels("i", ni),
        labels("o", no),
        delta,
        lambda,
    )
    .expect("well-formed random automaton")
}

/// Diagram with `1..=max_atoms` atoms and `1..=max_blocks` blocks. Block
/// sizes are random; atoms left uncovered are added to a random block.
pub fn random_diagram<R: Rng>(rng: &mut R, max_atoms: usize, max_blocks: usize) -> Diagram {
    let n = rng.gen_range(1..=max_atoms);
    let t = rng.gen_range(1..=max_blocks);
    let atoms = labels("a", n);
    let mut blocks: Vec<Vec<usize>> = (0..t)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(5));
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(rng);
            all.truncate(size);
            all
        })
        .collect();
    for a in 0..n {
        if !blocks.iter().any(|b| b.contains(&a)) {
            let j = rng.gen_range(0..t);
            blocks[j].push(a);
        }
    }
    let named: Vec<Vec<&str>> = blocks
        .iter()
        .map(|b| b.iter().map(|&a| atoms[a].as_str()).collect())
        .collect();
    Diagram::new(atoms.clone(), named).expect("well-formed random diagram")
}

/// Partition logic on `1..=max_ground` elements with `1..=max_partitions`
/// random partitions (each element gets a random cell tag).
pub fn random_logic<R: Rng>(
    rng: &mut R,
    max_ground: usize,
    max_partitions: usize,
) -> PartitionLogic {
    let n = rng.gen_range(1..=max_ground);
    let t = rng.gen_range(1..=max_partitions);
    let parts = (0..t)
        .map(|_| {
            let k = rng.gen_range(1..=n);
            crate::gum::group_by_value((0..n).map(|_| rng.gen_range(0..k)))
        })
        .collect();
    PartitionLogic::new(labels("g", n), parts).expect("well-formed random logic")
}

/// Relabels and reorders a logic at random; the result is isomorphic.
pub fn shuffle_logic<R: Rng>(rng: &mut R, pl: &PartitionLogic) -> PartitionLogic {
    let n = pl.ground().len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut parts: Vec<Vec<Vec<usize>>> = pl
        .partitions()
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| c.iter().map(|&x| perm[x]).collect())
                .collect()
        })
        .collect();
    parts.shuffle(rng);
    let ground = (0..n).map(|k| format!("x{k}")).collect();
    PartitionLogic::new(ground, parts).expect("relabelled logic stays valid")
}
