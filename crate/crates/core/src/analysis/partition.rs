//! Lower bound showing non-consensus on graphs that are not strongly connected.
//!
//! Take a proper partition `(V1, V2)` with no arc from `V1` into `V2`, start
//! from `1` on `V1` and `0` on `V2`. Nodes of `V2` only ever average among
//! themselves and stay at `0`, while `h(t) = min_{V1} x(t)` obeys
//! `h(t) >= a_t* h(t-1)` with `a_t* = min_{i in V1} A_t[i][i]`. Hence
//! `h(T) >= prod a_t* > 0` and the two sides never meet.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::require_valid_sequence;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ratlinalg::{rational_vec_str, MatrixSequence, Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionTrace {
    pub v1: BTreeSet<usize>,
    pub v2: BTreeSet<usize>,
    /// `h(0), ..., h(T)`
    #[serde(with = "rational_vec_str")]
    pub h_values: Vec<Rational>,
    /// `a_1*, ..., a_T*`
    #[serde(with = "rational_vec_str")]
    pub a_star_values: Vec<Rational>,
    /// Running products `1, a_1*, a_1* a_2*, ...`
    #[serde(with = "rational_vec_str")]
    pub bound: Vec<Rational>,
}

impl PartitionTrace {
    pub fn final_h(&self) -> &Rational {
        self.h_values.last().expect("h(0) always recorded")
    }

    pub fn final_bound(&self) -> &Rational {
        self.bound.last().expect("empty product recorded")
    }
}

pub fn partition_bound_trace(
    g: &Graph,
    v1: &BTreeSet<usize>,
    seq: &MatrixSequence,
    x0: &RationalVector,
) -> Result<PartitionTrace> {
    let n = g.n();
    if v1.is_empty() || v1.len() >= n || v1.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::Precondition(
            "V1 must be a nonempty proper subset of the nodes".into(),
        ));
    }
    let v2: BTreeSet<usize> = g.nodes().filter(|v| !v1.contains(v)).collect();
    if let Some((from, to)) = g.arcs().find(|(u, w)| v1.contains(u) && v2.contains(w)) {
        return Err(Error::PartitionArc { from, to });
    }
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: x0.len(),
        });
    }
    let expected_start = g.nodes().all(|v| {
        if v1.contains(&v) {
            x0[v - 1].is_one()
        } else {
            x0[v - 1].is_zero()
        }
    });
    if !expected_start {
        return Err(Error::Precondition("x0 must be 1 on V1 and 0 on V2".into()));
    }
    require_valid_sequence(g, seq)?;

    let min_over_v1 = |x: &RationalVector| v1.iter().map(|&v| x[v - 1].clone()).min().unwrap();
    let mut x = x0.clone();
    let mut h_values = vec![min_over_v1(&x)];
    let mut a_star_values = Vec::with_capacity(seq.len());
    let mut bound = vec![Rational::one()];
    for (t, a) in seq.matrices().iter().enumerate() {
        let step = t + 1;
        let a_star = v1
            .iter()
            .map(|&v| a.get(v - 1, v - 1).clone())
            .min()
            .unwrap();
        x = a.apply(&x)?;
        let h = min_over_v1(&x);
        if h < &a_star * h_values.last().unwrap() {
            return Err(Error::ContractBreach(format!(
                "h({step}) = {h} < a_{step}* h({t}) = {}",
                &a_star * h_values.last().unwrap()
            )));
        }
        if let Some(&v) = v2.iter().find(|&&v| !x[v - 1].is_zero()) {
            return Err(Error::ContractBreach(format!(
                "node {v} in V2 left 0 at step {step}"
            )));
        }
        bound.push(bound.last().unwrap() * &a_star);
        a_star_values.push(a_star);
        h_values.push(h);
    }
    let trace = PartitionTrace {
        v1: v1.clone(),
        v2,
        h_values,
        a_star_values,
        bound,
    };
    if !(trace.final_bound().is_positive() && trace.final_h() >= trace.final_bound()) {
        return Err(Error::ContractBreach("h(T) >= prod a_t* > 0 failed".into()));
    }
    Ok(trace)
}
