//! Even-cycle certificate from a sequence that reaches consensus.
//!
//! At time `T-1` some node sits strictly off the consensus value `x*`. Since
//! its last update is a convex combination with positive self-weight that
//! lands exactly on `x*`, one of its influencers under `A_T` sits strictly on
//! the other side. Following such influencers alternates sides, so the first
//! repeated node closes an even cycle.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Signed;
use serde::Serialize;

use super::require_valid_sequence;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratlinalg::{rational_str, MatrixSequence, Rational, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    fn of(value: &Rational, xstar: &Rational) -> Option<Side> {
        match value.cmp(xstar) {
            Ordering::Greater => Some(Side::Above),
            Ordering::Less => Some(Side::Below),
            Ordering::Equal => None,
        }
    }

    fn opposite(self) -> Side {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignWalk {
    #[serde(with = "rational_str")]
    pub xstar: Rational,
    /// `i_0, i_1, ...` where `i_{k+1}` influences `i_k`; the last entry is the
    /// first repeated node.
    #[serde(rename = "walk")]
    pub visited: Vec<usize>,
    /// Side of `x*` for each entry of `visited`, at time `T-1`.
    #[serde(skip)]
    pub signs: Vec<Side>,
    /// The closed cycle, listed in arc direction.
    #[serde(rename = "cycle")]
    pub extracted_cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Walk(SignWalk),
    /// `x(T-1)` is already constant; there is nothing to follow.
    Degenerate,
}

pub fn extract_even_cycle_certificate(
    g: &Graph,
    seq: &MatrixSequence,
    x0: &RationalVector,
) -> Result<Certificate> {
    require_valid_sequence(g, seq)?;
    if x0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: x0.len(),
        });
    }
    let Some((last, head)) = seq.matrices().split_last() else {
        return if x0.is_constant() {
            Ok(Certificate::Degenerate)
        } else {
            Err(Error::Precondition(
                "empty sequence does not reach consensus".into(),
            ))
        };
    };
    let mut before = x0.clone();
    for a in head {
        before = a.apply(&before)?;
    }
    let end = last.apply(&before)?;
    if !end.is_constant() {
        return Err(Error::Precondition(
            "sequence does not reach consensus from x0".into(),
        ));
    }
    if before.is_constant() {
        return Ok(Certificate::Degenerate);
    }
    let xstar = end[0].clone();
    let side = |v: usize| Side::of(&before[v - 1], &xstar);

    let start = (1..=g.n())
        .find(|&v| side(v).is_some())
        .expect("x(T-1) is not constant");
    let mut visited = vec![start];
    let mut signs = vec![side(start).unwrap()];
    let mut position = BTreeMap::from([(start, 0usize)]);
    loop {
        let cur = *visited.last().unwrap();
        let want = signs.last().unwrap().opposite();
        let row = last.row(cur - 1);
        let next = (1..=g.n())
            .find(|&j| j != cur && row[j - 1].is_positive() && side(j) == Some(want))
            .ok_or_else(|| {
                Error::ContractBreach(format!(
                    "node {cur} has no influencer on the other side of {xstar}"
                ))
            })?;
        visited.push(next);
        signs.push(want);
        if let Some(&first) = position.get(&next) {
            // walk order follows arcs backwards; reverse to arc direction
            let segment = &visited[first..visited.len() - 1];
            let mut cycle = vec![segment[0]];
            cycle.extend(segment[1..].iter().rev());
            return Ok(Certificate::Walk(SignWalk {
                xstar,
                visited,
                signs,
                extracted_cycle: cycle,
            }));
        }
        position.insert(next, visited.len() - 1);
    }
}

impl SignWalk {
    /// Structural self-check: even cycle, strict alternation, walk arcs in `g`.
    pub fn is_well_formed(&self, g: &Graph) -> bool {
        let even = !self.extracted_cycle.is_empty() && self.extracted_cycle.len().is_multiple_of(2);
        let alternating = self.signs.windows(2).all(|w| w[0] != w[1]);
        let walk_arcs = self.visited.windows(2).all(|w| g.has_arc(w[1], w[0]));
        let c = &self.extracted_cycle;
        let cycle_arcs = (0..c.len()).all(|k| g.has_arc(c[k], c[(k + 1) % c.len()]));
        let mut distinct = c.clone();
        distinct.sort_unstable();
        distinct.dedup();
        even && alternating && walk_arcs && cycle_arcs && distinct.len() == c.len()
    }
}
