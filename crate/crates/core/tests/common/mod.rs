#![allow(dead_code)]

use partition_logic::{Diagram, PartitionLogic, TwoValuedState};

/// All 0/1 assignments with exactly one true atom per block, in
/// lexicographic order.
pub fn brute_force_states(d: &Diagram) -> Vec<TwoValuedState> {
    let n = d.atoms().len();
    assert!(n <= 20, "oracle is exponential");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        // Atom 0 is the most significant bit so numeric order is lexicographic.
        let values: Vec<bool> = (0..n).map(|a| mask >> (n - 1 - a) & 1 == 1).collect();
        if d.blocks()
            .iter()
            .all(|b| b.iter().filter(|&&a| values[a]).count() == 1)
        {
            out.push(TwoValuedState::new(values));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm.
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![p.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn family(pl: &PartitionLogic, perm: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let mut f: Vec<Vec<Vec<usize>>> = pl
        .partitions()
        .iter()
        .map(|p| {
            let mut cells: Vec<Vec<usize>> = p
                .iter()
                .map(|c| {
                    let mut c: Vec<usize> = c.iter().map(|&x| perm[x]).collect();
                    c.sort_unstable();
                    c
                })
                .collect();
            cells.sort_unstable();
            cells
        })
        .collect();
    f.sort_unstable();
    f
}

/// Tries every ground bijection.
pub fn brute_force_isomorphic(a: &PartitionLogic, b: &PartitionLogic) -> bool {
    let n = a.ground().len();
    if n != b.ground().len() || a.partitions().len() != b.partitions().len() {
        return false;
    }
    assert!(n <= 8, "oracle is factorial");
    let identity: Vec<usize> = (0..n).collect();
    let target = family(b, &identity);
    permutations(n).iter().any(|p| family(a, p) == target)
}

/// Left half of the bug-logic state table, rows as printed.
pub const BUG_STATES: [&str; 14] = [
    "1000100010001",
    "1001010010000",
    "1000100101000",
    "0100100010011",
    "0100100100101",
    "0101010010010",
    "0101001000100",
    "0101010100100",
    "0100100101010",
    "0010001000101",
    "0010010100101",
    "0010010010011",
    "0010001001010",
    "0010010101010",
];

/// Right half of the same table (colors c1..c7), as printed.
pub const BUG_COLORS_PRINTED: [[u8; 7]; 14] = [
    [1, 5, 5, 9, 9, 1, 13],
    [1, 4, 6, 9, 9, 1, 4],
    [1, 5, 5, 8, 10, 3, 10],
    [2, 5, 5, 9, 9, 12, 13],
    [2, 5, 5, 8, 11, 11, 13],
    [2, 4, 6, 9, 9, 12, 4],
    [2, 4, 7, 7, 11, 11, 4],
    [2, 4, 6, 8, 11, 11, 4],
    [2, 5, 5, 8, 10, 12, 10],
    [3, 3, 7, 7, 11, 11, 13],
    [3, 3, 6, 8, 11, 11, 13],
    [3, 3, 6, 9, 9, 12, 13],
    [3, 3, 7, 7, 10, 13, 10],
    [3, 3, 6, 8, 10, 12, 10],
];

/// Printed cells that disagree with the state listed in the same row: row 3
/// values atom 1 (not 3) and row 13 values atom 12 (not 13) in the block
/// {1, 11, 12} of color c6. Entries are (row, color, printed, implied by row).
pub const BUG_COLOR_MISPRINTS: [(usize, usize, u8, u8); 2] = [(2, 5, 3, 1), (12, 5, 13, 12)];

pub fn bug_colors_corrected() -> [[u8; 7]; 14] {
    let mut t = BUG_COLORS_PRINTED;
    for (row, col, printed, implied) in BUG_COLOR_MISPRINTS {
        assert_eq!(t[row][col], printed);
        t[row][col] = implied;
    }
    t
}

pub fn bits(s: &str) -> TwoValuedState {
    TwoValuedState::new(s.chars().map(|c| c == '1').collect())
}

pub fn diagram(src: &str) -> Diagram {
    Diagram::parse(src).expect("fixture parses")
}
