use serde::Serialize;

use super::fixture::PaperFixture;
use super::simulate::{simulate, Mode, Trajectory};
use super::verify::{verify_sequence, Goal, VerificationReport};
use crate::analysis::{assess_feasibility, FeasibilityVerdict, Status};
use crate::error::Result;
use crate::graph::DEFAULT_NODE_LIMIT;
use crate::ratlinalg::{rat, RationalVector};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DemoReport {
    pub passed: bool,
    pub verification: VerificationReport,
    pub verdict: FeasibilityVerdict,
    pub trajectory: Trajectory,
}

/// Verifies the built-in 4-node example end to end.
pub fn demo_paper_example() -> Result<DemoReport> {
    let fixture = PaperFixture::load();
    let verification = verify_sequence(&fixture.graph, &fixture.sequence, Goal::Average);
    let verdict = assess_feasibility(&fixture.graph, DEFAULT_NODE_LIMIT)?;
    let x0 = RationalVector::from_ints(&[1, 0, 0, 0]);
    let trajectory = simulate(&fixture.sequence, &x0, Mode::Exact)?;
    let ends_at_average = match &trajectory.states {
        super::simulate::States::Exact(s) => {
            s.last() == Some(&RationalVector::constant(4, rat(1, 4)))
        }
        super::simulate::States::Approximate(_) => false,
    };
    let verdict_as_expected = verdict.status == Status::Unknown
        && verdict.reasons.strongly_connected
        && verdict.reasons.even_simple_cycle.is_some()
        && !verdict.reasons.bidirectional_spanning_tree;
    Ok(DemoReport {
        passed: verification.passed && verdict_as_expected && ends_at_average,
        verification,
        verdict,
        trajectory,
    })
}
