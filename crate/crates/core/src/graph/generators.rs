//! Graph families used by tests, the acceptance suite and the CLI fixtures.

use rand::Rng;

use super::Graph;

/// Bidirectional path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    Graph::undirected(n, (1..n).map(|i| (i, i + 1)).collect()).expect("valid path")
}

/// Bidirectional star with center 1 and leaves `2..=n`.
pub fn star(n: usize) -> Graph {
    Graph::undirected(n, (2..=n).map(|i| (1, i)).collect()).expect("valid star")
}

/// Directed cycle with arcs `(i, i-1)` for `i = 2..=n` and `(1, n)`.
pub fn directed_cycle(n: usize) -> Graph {
    let mut arcs: Vec<_> = (2..=n).map(|i| (i, i - 1)).collect();
    if n >= 2 {
        arcs.push((1, n));
    }
    Graph::new(n, arcs).expect("valid cycle")
}

/// Labeled tree decoded from a Prüfer sequence over `1..=seq.len()+2`.
pub fn tree_from_pruefer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (1..=n)
            .find(|&u| degree[u] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::undirected(n, edges).expect("Prüfer decoding yields a tree")
}

/// Uniformly random labeled tree on `n` nodes (bidirectional arcs).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    match n {
        0 => panic!("tree needs at least one node"),
        1 => Graph::empty(1),
        2 => path(2),
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
            tree_from_pruefer(&seq)
        }
    }
}

/// Each ordered pair becomes an arc independently with probability `p`.
pub fn random_digraph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Graph::new(n, arcs).expect("valid arcs")
}
