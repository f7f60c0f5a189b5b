//! Graphviz export of diagrams.
//!
//! Atoms become nodes. Each block is drawn as a chain of edges through its
//! atoms in atom order, the usual way of drawing a context as one smooth
//! line in a Greechie diagram.

use std::fmt::Write as _;

use crate::logic::Diagram;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT graph of `d`, named `name`.
pub fn to_dot(d: &Diagram, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(name));
    let _ = writeln!(out, "  node [shape=circle];");
    for a in d.atoms() {
        let _ = writeln!(out, "  {};", quote(a));
    }
    for (j, block) in d.blocks().iter().enumerate() {
        let label = format!("b{}", j + 1);
        if let [single] = block[..] {
            let _ = writeln!(
                out,
                "  {} [xlabel={}];",
                quote(&d.atoms()[single]),
                quote(&label)
            );
            continue;
        }
        let chain: Vec<String> = block.iter().map(|&a| quote(&d.atoms()[a])).collect();
        let _ = writeln!(out, "  {} [label={}];", chain.join(" -- "), quote(&label));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l12_dot_golden() {
        let d = Diagram::parse(crate::fixtures::L12_LOGIC).unwrap();
        let expected = "\
graph \"l12\" {
  node [shape=circle];
  \"1\";
  \"2\";
  \"3\";
  \"4\";
  \"5\";
  \"1\" -- \"2\" -- \"5\" [label=\"b1\"];
  \"3\" -- \"4\" -- \"5\" [label=\"b2\"];
}
";
        assert_eq!(to_dot(&d, "l12"), expected);
    }

    #[test]
    fn singleton_block_and_quoting() {
        let d = Diagram::new(["a\"b"], [["a\"b"]]).unwrap();
        let dot = to_dot(&d, "x");
        assert!(dot.contains("\"a\\\"b\" [xlabel=\"b1\"];"));
    }
}
