//! Feasibility of finite-time consensus on directed graphs, plus executable
//! forms of the impossibility arguments: sign-alternating walks, the
//! consecutive-sign lemma on even cycles, and the partition lower bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    find_spanning_tree, has_even_simple_cycle, is_simple_cycle_graph, is_strongly_connected, Graph,
};
use crate::ratlinalg::{first_inconsistency, has_positive_diagonal, is_stochastic, MatrixSequence};

pub mod certificate;
pub mod evidence;
pub mod lemma;
pub mod partition;
pub mod random;

pub use certificate::{extract_even_cycle_certificate, Certificate, Side, SignWalk};
pub use evidence::{cycle_impossibility_evidence, EvidenceReport};
pub use lemma::{check_sign_lemma, has_same_sign_pair};
pub use partition::{partition_bound_trace, PartitionTrace};
pub use random::{random_consistent_matrix, random_consistent_sequence, trial_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Feasible,
    Infeasible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Findings {
    pub strongly_connected: bool,
    pub even_simple_cycle: Option<Vec<usize>>,
    pub bidirectional_spanning_tree: bool,
    pub is_pure_simple_cycle: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeasibilityVerdict {
    pub status: Status,
    pub reasons: Findings,
    pub notes: Vec<String>,
}

/// Three-valued verdict: a bidirectional spanning tree proves feasibility;
/// missing strong connectivity, no even simple cycle, or being a single
/// directed cycle (n >= 3) proves infeasibility; anything else is open.
pub fn assess_feasibility(g: &Graph, node_limit: usize) -> Result<FeasibilityVerdict> {
    let reasons = Findings {
        strongly_connected: is_strongly_connected(g),
        even_simple_cycle: has_even_simple_cycle(g, node_limit)?,
        bidirectional_spanning_tree: find_spanning_tree(g).is_some(),
        is_pure_simple_cycle: is_simple_cycle_graph(g),
    };
    let mut notes = Vec::new();
    let status = if reasons.bidirectional_spanning_tree {
        notes.push("bidirectional spanning tree: an exact averaging sequence exists".into());
        Status::Feasible
    } else {
        if !reasons.strongly_connected {
            notes.push("not strongly connected".into());
        }
        if reasons.even_simple_cycle.is_none() {
            notes.push("no simple directed cycle of even length".into());
        }
        if reasons.is_pure_simple_cycle && g.n() >= 3 {
            notes.push("graph is a single directed cycle".into());
        }
        if notes.is_empty() {
            notes.push(
                "all known necessary conditions hold; no sufficient condition applies".into(),
            );
            Status::Unknown
        } else {
            Status::Infeasible
        }
    };
    Ok(FeasibilityVerdict {
        status,
        reasons,
        notes,
    })
}

/// Every matrix stochastic, positive-diagonal and consistent with `g`.
pub(crate) fn require_valid_sequence(g: &Graph, seq: &MatrixSequence) -> Result<()> {
    if seq.order() != g.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: seq.order(),
        });
    }
    for (t, a) in seq.matrices().iter().enumerate() {
        let idx = t + 1;
        if !is_stochastic(a) {
            return Err(Error::Precondition(format!("A_{idx} is not stochastic")));
        }
        if !has_positive_diagonal(a) {
            return Err(Error::Precondition(format!(
                "A_{idx} has a nonpositive diagonal entry"
            )));
        }
        if let Some((i, j)) = first_inconsistency(a, g)? {
            return Err(Error::Precondition(format!(
                "A_{idx} entry ({},{}) is positive but arc ({},{}) is missing",
                i + 1,
                j + 1,
                j + 1,
                i + 1
            )));
        }
    }
    Ok(())
}
