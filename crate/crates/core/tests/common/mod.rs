//! Independent oracles shared by the integration suites. Nothing here calls
//! the library routine it is used to check.

#![allow(dead_code)]

use ftconsensus::graph::Graph;
use ftconsensus::ratlinalg::{MatrixSequence, Rational, RationalMatrix};
use num_traits::{One, Zero};

/// Dense row-major copy of a matrix.
pub fn dense(a: &RationalMatrix) -> Vec<Vec<Rational>> {
    let n = a.order();
    (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect()
}

/// Schoolbook `A_T ... A_1`, built right to left with a triple loop.
pub fn naive_product(seq: &MatrixSequence) -> Vec<Vec<Rational>> {
    let n = seq.order();
    let mut acc: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for a in seq.matrices() {
        let a = dense(a);
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for k in 0..n {
                    s += &a[i][k] * &acc[k][j];
                }
                next[i][j] = s;
            }
        }
        acc = next;
    }
    acc
}

/// Every entry equal to `1/n`.
pub fn is_exact_average(p: &[Vec<Rational>]) -> bool {
    let n = p.len() as i64;
    let target = Rational::new(1.into(), n.into());
    p.iter().all(|row| row.iter().all(|v| *v == target))
}

/// Every row equal to `w`.
pub fn rows_equal(p: &[Vec<Rational>], w: &[Rational]) -> bool {
    p.iter().all(|row| row.as_slice() == w)
}

/// Nonnegative, rows summing to one, positive diagonal, and every positive
/// off-diagonal `(i, j)` backed by arc `(j, i)`; checked entry by entry.
pub fn matrix_admissible(a: &RationalMatrix, g: &Graph) -> bool {
    let n = a.order();
    for i in 0..n {
        let mut sum = Rational::zero();
        for j in 0..n {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if *v < Rational::zero() || (i != j && !g.has_arc(j + 1, i + 1)) {
                return false;
            }
            sum += v;
        }
        if !sum.is_one() || *a.get(i, i) <= Rational::zero() {
            return false;
        }
    }
    true
}

/// Transitive closure by Floyd-Warshall on a boolean matrix.
pub fn floyd_warshall_strongly_connected(g: &Graph) -> bool {
    let n = g.n();
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for (u, v) in g.arcs() {
        r[u - 1][v - 1] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r.iter().all(|row| row.iter().all(|&b| b))
}

/// All simple cycles, each listed once starting at its smallest node, found
/// by extending every path that starts at that smallest node.
pub fn brute_force_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for next in 1..=g.n() {
            if !g.has_arc(last, next) {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if next > start && !path.contains(&next) {
                path.push(next);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 1..=g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

pub fn brute_force_has_even_cycle(g: &Graph) -> bool {
    brute_force_cycles(g).iter().any(|c| c.len() % 2 == 0)
}

/// `cycle` is a directed simple cycle of `g` in the listed order.
pub fn is_simple_cycle_of(g: &Graph, cycle: &[usize]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    !cycle.is_empty()
        && cycle.iter().all(|v| seen.insert(*v))
        && (0..cycle.len()).all(|k| g.has_arc(cycle[k], cycle[(k + 1) % cycle.len()]))
}
