//! Bidirectional spanning trees and their distance layering from a leaf.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::{bidirectional_subgraph, Graph};
use crate::error::{Error, Result};

/// A tree on a subset of the ambient nodes `1..=n`.
///
/// Used both for spanning trees of a host graph and for the shrinking
/// subtrees visited by the constructor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    n: usize,
    root: usize,
    adj: BTreeMap<usize, BTreeSet<usize>>,
    parent: BTreeMap<usize, usize>,
}

impl SpanningTree {
    /// Builds and validates a tree on `nodes` from undirected `edges`.
    pub fn from_edges(
        n: usize,
        root: usize,
        nodes: impl IntoIterator<Item = usize>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> =
            nodes.into_iter().map(|v| (v, BTreeSet::new())).collect();
        if adj.keys().any(|&v| v == 0 || v > n) {
            return Err(Error::InvalidGraph(format!(
                "tree node out of range 1..={n}"
            )));
        }
        if !adj.contains_key(&root) {
            return Err(Error::UnknownNode(root));
        }
        for &(u, v) in edges {
            if !adj.contains_key(&u) || !adj.contains_key(&v) || u == v {
                return Err(Error::InvalidGraph(format!("bad tree edge ({u},{v})")));
            }
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        let edge_count: usize = adj.values().map(|s| s.len()).sum::<usize>() / 2;
        if edge_count + 1 != adj.len() {
            return Err(Error::InvalidGraph(format!(
                "{} nodes need {} tree edges, got {edge_count}",
                adj.len(),
                adj.len() - 1
            )));
        }
        let mut tree = SpanningTree {
            n,
            root,
            adj,
            parent: BTreeMap::new(),
        };
        tree.reroot(root);
        if tree.parent.len() + 1 != tree.adj.len() {
            return Err(Error::InvalidGraph(
                "tree edges do not connect all nodes".into(),
            ));
        }
        Ok(tree)
    }

    fn reroot(&mut self, root: usize) {
        self.root = root;
        self.parent.clear();
        let mut queue = VecDeque::from([root]);
        let mut seen = BTreeSet::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[&v] {
                if seen.insert(w) {
                    self.parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
    }

    pub fn ambient_order(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[&v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// Parent towards the root; `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect()
    }

    pub fn smallest_leaf(&self) -> Option<usize> {
        self.nodes().find(|&v| self.is_leaf(v))
    }

    /// The tree with leaf `v` removed. If `v` was the root, its neighbor becomes root.
    pub fn without_leaf(&self, v: usize) -> Result<Self> {
        if !self.is_leaf(v) {
            return Err(Error::NotALeaf(v));
        }
        let mut t = self.clone();
        let nb = *t.adj[&v].iter().next().unwrap();
        t.adj.remove(&v);
        t.adj.get_mut(&nb).unwrap().remove(&v);
        let root = if v == self.root { nb } else { self.root };
        t.reroot(root);
        Ok(t)
    }

    /// Tree distances from `src` to every tree node.
    pub fn distances_from(&self, src: usize) -> BTreeMap<usize, usize> {
        let mut dist = BTreeMap::from([(src, 0)]);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &w in &self.adj[&v] {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// BFS tree of the bidirectional subgraph rooted at node 1, if it spans all nodes.
pub fn find_spanning_tree(g: &Graph) -> Option<SpanningTree> {
    let b = bidirectional_subgraph(g);
    let mut edges = Vec::new();
    let mut seen = BTreeSet::from([1]);
    let mut queue = VecDeque::from([1]);
    while let Some(v) = queue.pop_front() {
        for w in b.out_neighbors(v) {
            if seen.insert(w) {
                edges.push((v, w));
                queue.push_back(w);
            }
        }
    }
    if seen.len() != g.n() {
        return None;
    }
    Some(SpanningTree::from_edges(g.n(), 1, 1..=g.n(), &edges).expect("BFS tree is a tree"))
}

/// Exact diameter by double BFS.
pub fn tree_diameter(t: &SpanningTree) -> usize {
    let d0 = t.distances_from(t.root());
    let far = d0
        .iter()
        .max_by_key(|(v, d)| (**d, std::cmp::Reverse(**v)))
        .map(|(v, _)| *v);
    match far {
        Some(far) => t.distances_from(far).values().copied().max().unwrap_or(0),
        None => 0,
    }
}

/// Distance layering of a tree from a leaf `v0`.
///
/// `v_layers[k]` holds the non-leaves at distance `k` (with `v_layers[0] = {v0}`),
/// `l_layers[k]` the leaves at distance `k`. Both vectors have `depth() + 1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeLayering {
    pub v0: usize,
    pub dist: BTreeMap<usize, usize>,
    pub v_layers: Vec<BTreeSet<usize>>,
    pub l_layers: Vec<BTreeSet<usize>>,
    /// Each non-root node's unique neighbor one step closer to `v0`.
    pub parent_in_tree: BTreeMap<usize, usize>,
    /// For every non-leaf node (and `v0`), its smallest-id neighbor one step further out.
    pub designated_child: BTreeMap<usize, usize>,
}

impl TreeLayering {
    /// Largest distance from `v0`; the number of absorption steps.
    pub fn depth(&self) -> usize {
        self.v_layers.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.dist.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.dist.keys().copied()
    }
}

pub fn layer_decompose(t: &SpanningTree, v0: usize) -> Result<TreeLayering> {
    if !t.contains(v0) {
        return Err(Error::UnknownNode(v0));
    }
    if t.len() > 1 && !t.is_leaf(v0) {
        return Err(Error::NotALeaf(v0));
    }
    let dist = t.distances_from(v0);
    let depth = dist.values().copied().max().unwrap_or(0);
    let mut v_layers = vec![BTreeSet::new(); depth + 1];
    let mut l_layers = vec![BTreeSet::new(); depth + 1];
    let mut parent_in_tree = BTreeMap::new();
    let mut designated_child = BTreeMap::new();
    for (&v, &d) in &dist {
        if d == 0 || !t.is_leaf(v) {
            v_layers[d].insert(v);
        } else {
            l_layers[d].insert(v);
        }
        for w in t.neighbors(v) {
            if dist[&w] + 1 == d {
                parent_in_tree.insert(v, w);
            }
        }
        if d == 0 || !t.is_leaf(v) {
            if let Some(c) = t.neighbors(v).find(|w| dist[w] == d + 1) {
                designated_child.insert(v, c);
            }
        }
    }
    Ok(TreeLayering {
        v0,
        dist,
        v_layers,
        l_layers,
        parent_in_tree,
        designated_child,
    })
}
