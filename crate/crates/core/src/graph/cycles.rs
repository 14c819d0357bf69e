//! Simple directed cycle enumeration (Johnson's blocking scheme).
//!
//! Cycles are node lists in arc direction, each starting at its smallest
//! node; cycles are produced grouped by that smallest node, ascending.

use std::collections::BTreeSet;

use super::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_LIMIT: usize = 20;

struct Search<'a, F> {
    g: &'a Graph,
    start: usize,
    blocked: Vec<bool>,
    b_sets: Vec<BTreeSet<usize>>,
    path: Vec<usize>,
    out: Vec<Vec<usize>>,
    stop: F,
    stopped: bool,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    fn unblock(&mut self, v: usize) {
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            if self.blocked[u] {
                self.blocked[u] = false;
                stack.extend(std::mem::take(&mut self.b_sets[u]));
            }
        }
    }

    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.path.push(v);
        self.blocked[v] = true;
        let succ: Vec<usize> = self
            .g
            .out_neighbors(v)
            .filter(|&w| w >= self.start)
            .collect();
        for &w in &succ {
            if self.stopped {
                break;
            }
            if w == self.start {
                self.out.push(self.path.clone());
                found = true;
                if (self.stop)(&self.path) {
                    self.stopped = true;
                }
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in &succ {
                self.b_sets[w].insert(v);
            }
        }
        self.path.pop();
        found
    }
}

/// All simple directed cycles of `g`, stopping early once `stop` returns true
/// for a reported cycle (that cycle is included).
pub fn enumerate_simple_cycles(
    g: &Graph,
    node_limit: usize,
    stop: impl FnMut(&[usize]) -> bool,
) -> Result<Vec<Vec<usize>>> {
    if g.n() > node_limit {
        return Err(Error::NodeLimitExceeded {
            n: g.n(),
            limit: node_limit,
        });
    }
    let n = g.n();
    let mut search = Search {
        g,
        start: 1,
        blocked: vec![false; n + 1],
        b_sets: vec![BTreeSet::new(); n + 1],
        path: Vec::new(),
        out: Vec::new(),
        stop,
        stopped: false,
    };
    for s in 1..=n {
        search.start = s;
        for v in s..=n {
            search.blocked[v] = false;
            search.b_sets[v].clear();
        }
        search.circuit(s);
        if search.stopped {
            break;
        }
    }
    Ok(search.out)
}

/// Some even-length simple cycle, if any. A bidirectional pair is a 2-cycle.
pub fn has_even_simple_cycle(g: &Graph, node_limit: usize) -> Result<Option<Vec<usize>>> {
    let cycles = enumerate_simple_cycles(g, node_limit, |c| c.len() % 2 == 0)?;
    Ok(cycles.into_iter().find(|c| c.len() % 2 == 0))
}
