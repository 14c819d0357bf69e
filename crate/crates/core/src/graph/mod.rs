//! Directed graphs over nodes `1..=n`.
//!
//! Arc `(j, i)` means node `i` may place weight on node `j`'s value, so a
//! matrix entry `A[i][j] > 0` needs `(j, i)` in the arc set. Node ids are
//! 1-based everywhere in this module's API.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod cycles;
pub mod generators;
pub mod tree;

pub use cycles::{enumerate_simple_cycles, has_even_simple_cycle, DEFAULT_NODE_LIMIT};
pub use tree::{find_spanning_tree, layer_decompose, tree_diameter, SpanningTree, TreeLayering};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
    out_adj: Vec<BTreeSet<usize>>,
    in_adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    arcs: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    undirected: bool,
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;
    fn try_from(w: GraphWire) -> Result<Self> {
        if w.undirected {
            Graph::undirected(w.n, w.arcs)
        } else {
            Graph::new(w.n, w.arcs)
        }
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> Self {
        GraphWire {
            n: g.n,
            arcs: g.arcs.into_iter().collect(),
            undirected: false,
        }
    }
}

impl Graph {
    /// Arcs must satisfy `1 <= from, to <= n` and `from != to`. Duplicates collapse.
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("node count must be positive".into()));
        }
        let mut g = Graph {
            n,
            arcs: BTreeSet::new(),
            out_adj: vec![BTreeSet::new(); n],
            in_adj: vec![BTreeSet::new(); n],
        };
        for (from, to) in arcs {
            if from == 0 || to == 0 || from > n || to > n {
                return Err(Error::InvalidGraph(format!(
                    "arc ({from},{to}) out of range 1..={n}"
                )));
            }
            if from == to {
                return Err(Error::InvalidGraph(format!("self-loop at node {from}")));
            }
            g.arcs.insert((from, to));
            g.out_adj[from - 1].insert(to);
            g.in_adj[to - 1].insert(from);
        }
        Ok(g)
    }

    /// Every listed pair becomes both arcs.
    pub fn undirected(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let arcs = edges
            .into_iter()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .collect();
        Graph::new(n, arcs)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, Vec::new()).expect("positive node count")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.contains(&(from, to))
    }

    /// Nodes `w` with an arc `(v, w)`, ascending.
    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[v - 1].iter().copied()
    }

    /// Nodes `u` with an arc `(u, v)`, i.e. the nodes allowed to influence `v`.
    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.in_adj[v - 1].iter().copied()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v - 1].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v - 1].len()
    }

    /// A copy with the given arcs added.
    pub fn with_arcs(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Graph::new(self.n, self.arcs.iter().copied().chain(extra).collect())
    }

    /// Nodes reachable from `start` along arcs (including `start`).
    pub fn reachable_from(&self, start: usize) -> BTreeSet<usize> {
        bfs(start, |v| self.out_neighbors(v).collect())
    }

    /// Nodes that can reach `target` (including `target`). Closed under in-arcs.
    pub fn ancestors_of(&self, target: usize) -> BTreeSet<usize> {
        bfs(target, |v| self.in_neighbors(v).collect())
    }
}

fn bfs(start: usize, next: impl Fn(usize) -> Vec<usize>) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for w in next(v) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Arc `(u, v)` kept iff both `(u, v)` and `(v, u)` are present.
pub fn bidirectional_subgraph(g: &Graph) -> Graph {
    let arcs = g.arcs().filter(|&(u, v)| g.has_arc(v, u)).collect();
    Graph::new(g.n, arcs).expect("subset of a valid arc set")
}

/// Connected components of the bidirectional subgraph, each sorted, ordered by smallest member.
pub fn bidirectional_components(g: &Graph) -> Vec<Vec<usize>> {
    let b = bidirectional_subgraph(g);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in b.nodes() {
        if seen.contains(&v) {
            continue;
        }
        let comp = b.reachable_from(v);
        seen.extend(comp.iter().copied());
        out.push(comp.into_iter().collect());
    }
    out
}

/// Every node reaches every other along arcs. Forward and backward search from node 1.
pub fn is_strongly_connected(g: &Graph) -> bool {
    g.reachable_from(1).len() == g.n && g.ancestors_of(1).len() == g.n
}

/// The arc set is exactly one directed Hamiltonian cycle.
pub fn is_simple_cycle_graph(g: &Graph) -> bool {
    g.nodes()
        .all(|v| g.in_degree(v) == 1 && g.out_degree(v) == 1)
        && is_strongly_connected(g)
}
