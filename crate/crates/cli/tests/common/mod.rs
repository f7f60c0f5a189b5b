#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use partition_logic::Diagram;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn plogic<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = Command::new(env!("CARGO_BIN_EXE_plogic"))
        .args(args)
        .output()
        .expect("plogic runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Output lines that are not `#` comments.
pub fn body(s: &str) -> Vec<&str> {
    s.lines().filter(|l| !l.starts_with('#')).collect()
}

/// Parses a `0,1,...` line.
pub fn vector(line: &str) -> Vec<bool> {
    line.split(',').map(|t| t == "1").collect()
}

/// Every 0/1 assignment with exactly one true atom per block, lex order.
pub fn brute_force_states(d: &Diagram) -> Vec<Vec<bool>> {
    let n = d.atoms().len();
    assert!(n <= 20, "oracle is exponential");
    (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .map(|a| mask >> (n - 1 - a) & 1 == 1)
                .collect::<Vec<bool>>()
        })
        .filter(|v| {
            d.blocks()
                .iter()
                .all(|b| b.iter().filter(|&&a| v[a]).count() == 1)
        })
        .collect()
}

/// L12 urn: ball types 1..5 with their red and green symbols.
pub const L12_URN: [(u8, u8); 5] = [(1, 3), (1, 4), (2, 3), (2, 4), (5, 5)];

/// L12 automaton output table: λ(s, 0) and λ(s, 1) for states 1..5;
/// every transition goes to state 1.
pub const L12_LAMBDA: [[u8; 5]; 2] = [[1, 1, 2, 2, 5], [3, 4, 3, 4, 5]];

/// The dispersion-free states of L12 in lexicographic order.
pub const L12_STATES: [&str; 5] = ["00001", "01010", "01100", "10010", "10100"];

/// Synthesized L12 GUM: per ball type, the symbols shown in colors c1 and c2.
pub const L12_SYNTH: [(u8, u8); 5] = [(5, 5), (2, 4), (2, 3), (1, 4), (1, 3)];

/// Bug-logic colour table, left half: the 14 dispersion-free states of the bug logic.
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

/// Bug-logic colour table, right half (colors c1..c7), as printed.
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

/// `(row, column, printed, implied)`: cells of the printed right half that
/// contradict the state in the same row. In block {1,11,12} row 3 values
/// atom 1 and row 13 values atom 12.
pub const BUG_COLOR_MISPRINTS: [(usize, usize, u8, u8); 2] = [(2, 5, 3, 1), (12, 5, 13, 12)];

pub fn bug_colors_corrected() -> [[u8; 7]; 14] {
    let mut t = BUG_COLORS_PRINTED;
    for (row, col, printed, implied) in BUG_COLOR_MISPRINTS {
        assert_eq!(t[row][col], printed);
        t[row][col] = implied;
    }
    t
}

pub fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}
