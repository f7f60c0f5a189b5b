//! Colour refinement plus individualization search on small vertex-coloured
//! graphs. Logics and diagrams are encoded as such graphs (ground elements,
//! atoms and contexts as differently coloured vertices, incidence as edges)
//! and both isomorphism testing and canonical forms run on that encoding.

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub(crate) struct Graph {
    pub colors: Vec<u32>,
    /// Sorted, symmetric adjacency lists.
    pub adj: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BudgetExceeded;

impl Graph {
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        Graph {
            colors,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v);
        self.adj[v].push(u);
    }

    pub fn finish(mut self) -> Self {
        for list in &mut self.adj {
            list.sort_unstable();
            list.dedup();
        }
        self
    }

    fn len(&self) -> usize {
        self.colors.len()
    }

    /// `twins[v]` is the smallest vertex with the same colour and the same
    /// neighbourhood as `v`. Swapping two such vertices is an automorphism.
    fn twins(&self) -> Vec<usize> {
        let mut first: BTreeMap<(u32, &[usize]), usize> = BTreeMap::new();
        (0..self.len())
            .map(|v| *first.entry((self.colors[v], &self.adj[v][..])).or_insert(v))
            .collect()
    }
}

/// Refines `colors` to the coarsest equitable colouring. New colour values
/// are ranks of sorted signatures, so the result depends only on the
/// structure and never on vertex numbering.
pub(crate) fn refine(colors: &mut [u32], adj: &[Vec<usize>]) {
    let mut classes = distinct(colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
            .map(|v| {
                let mut around: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        for (v, sig) in sigs.iter().enumerate() {
            colors[v] = uniq.binary_search(sig).expect("signature present") as u32;
        }
        if uniq.len() == classes {
            return;
        }
        classes = uniq.len();
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn individualize(colors: &mut [u32], picks: &[usize]) {
    for c in colors.iter_mut() {
        *c *= 2;
    }
    for &v in picks {
        colors[v] += 1;
    }
}

/// Members of the smallest colour class having more than one vertex among
/// `range`, or `None` when every vertex in `range` has a unique colour.
fn target_class(colors: &[u32], range: std::ops::Range<usize>) -> Option<u32> {
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for v in range {
        *count.entry(colors[v]).or_default() += 1;
    }
    count.into_iter().find(|&(_, n)| n > 1).map(|(c, _)| c)
}

/// Minimum of `encode` over all leaves of the individualization-refinement
/// tree. `encode` receives a discrete colouring (a permutation of
/// `0..n`) and must produce a value that determines the graph up to that
/// relabelling.
pub(crate) fn canonical_min<K, F>(
    g: &Graph,
    node_limit: u64,
    encode: F,
) -> Result<K, BudgetExceeded>
where
    K: Ord,
    F: Fn(&[u32]) -> K,
{
    struct Search<'a, K, F> {
        g: &'a Graph,
        twins: Vec<usize>,
        nodes: u64,
        limit: u64,
        encode: F,
        best: Option<K>,
    }

    impl<K: Ord, F: Fn(&[u32]) -> K> Search<'_, K, F> {
        fn visit(&mut self, mut colors: Vec<u32>) -> Result<(), BudgetExceeded> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(BudgetExceeded);
            }
            refine(&mut colors, &self.g.adj);
            let Some(target) = target_class(&colors, 0..self.g.len()) else {
                let key = (self.encode)(&colors);
                if self.best.as_ref().is_none_or(|b| key < *b) {
                    self.best = Some(key);
                }
                return Ok(());
            };
            let mut tried: Vec<usize> = Vec::new();
            for v in 0..self.g.len() {
                if colors[v] != target || tried.contains(&self.twins[v]) {
                    continue;
                }
                tried.push(self.twins[v]);
                let mut next = colors.clone();
                individualize(&mut next, &[v]);
                self.visit(next)?;
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        twins: g.twins(),
        nodes: 0,
        limit: node_limit,
        encode,
        best: None,
    };
    search.visit(g.colors.clone())?;
    Ok(search.best.expect("search tree has at least one leaf"))
}

/// Finds a colour-preserving isomorphism `a -> b`, returned as a vertex map.
pub(crate) fn find_isomorphism(
    a: &Graph,
    b: &Graph,
    node_limit: u64,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let na = a.len();
    let mut adj = a.adj.clone();
    adj.extend(
        b.adj
            .iter()
            .map(|l| l.iter().map(|w| w + na).collect::<Vec<_>>()),
    );
    let mut colors = a.colors.clone();
    colors.extend_from_slice(&b.colors);
    let twins_b = b.twins();

    struct Search<'a> {
        a: &'a Graph,
        b: &'a Graph,
        adj: Vec<Vec<usize>>,
        twins_b: Vec<usize>,
        nodes: u64,
        limit: u64,
    }

    impl Search<'_> {
        fn visit(&mut self, mut colors: Vec<u32>) -> Result<Option<Vec<usize>>, BudgetExceeded> {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(BudgetExceeded);
            }
            let na = self.a.len();
            refine(&mut colors, &self.adj);
            let mut balance: BTreeMap<u32, i64> = BTreeMap::new();
            for (v, &c) in colors.iter().enumerate() {
                *balance.entry(c).or_default() += if v < na { 1 } else { -1 };
            }
            if balance.values().any(|&d| d != 0) {
                return Ok(None);
            }
            let Some(target) = target_class(&colors, 0..na) else {
                let mut by_color = vec![usize::MAX; colors.len()];
                for w in na..colors.len() {
                    by_color[colors[w] as usize] = w - na;
                }
                let map: Vec<usize> = (0..na).map(|v| by_color[colors[v] as usize]).collect();
                return Ok(self.verify(&map).then_some(map));
            };
            let x = (0..na)
                .find(|&v| colors[v] == target)
                .expect("target class is nonempty");
            let mut tried: Vec<usize> = Vec::new();
            for y in na..colors.len() {
                if colors[y] != target || tried.contains(&self.twins_b[y - na]) {
                    continue;
                }
                tried.push(self.twins_b[y - na]);
                let mut next = colors.clone();
                individualize(&mut next, &[x, y]);
                if let Some(map) = self.visit(next)? {
                    return Ok(Some(map));
                }
            }
            Ok(None)
        }

        fn verify(&self, map: &[usize]) -> bool {
            (0..self.a.len()).all(|v| {
                if self.a.colors[v] != self.b.colors[map[v]] {
                    return false;
                }
                let mut image: Vec<usize> = self.a.adj[v].iter().map(|&w| map[w]).collect();
                image.sort_unstable();
                image == self.b.adj[map[v]]
            })
        }
    }

    let mut search = Search {
        a,
        b,
        adj,
        twins_b,
        nodes: 0,
        limit: node_limit,
    };
    search.visit(colors)
}
