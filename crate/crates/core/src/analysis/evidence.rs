//! Randomized regression harness for the even-cycle impossibility result.
//!
//! No finite sequence of positive-diagonal stochastic matrices consistent
//! with a directed cycle reaches consensus. Sampling cannot prove that; the
//! report only counts how many random products happened to be rank one.

use rand::Rng;
use serde::Serialize;

use super::lemma::has_same_sign_pair;
use super::random::{random_consistent_sequence, trial_rng};
use crate::error::{Error, Result};
use crate::graph::generators::directed_cycle;
use crate::ratlinalg::{is_rank_one_stochastic, rat, sequence_product, MatrixSequence};
use crate::ratlinalg::{Rational, RationalVector};

pub const EVIDENCE_NOTE: &str = "randomized evidence, not a proof: sampled sequences can only \
     fail to find a counterexample";

#[derive(Clone, Debug, Serialize)]
pub struct EvidenceFailure {
    pub trial: u64,
    pub kind: &'static str,
    pub sequence: MatrixSequence,
}

#[derive(Clone, Debug, Serialize)]
pub struct EvidenceReport {
    pub cycle_length: usize,
    pub trials: u64,
    pub max_length: usize,
    pub seed: u64,
    pub rank_one_products: u64,
    pub lemma_checks: u64,
    pub lemma_violations: u64,
    pub first_failure: Option<EvidenceFailure>,
    pub note: &'static str,
}

impl EvidenceReport {
    pub fn clean(&self) -> bool {
        self.rank_one_products == 0 && self.lemma_violations == 0
    }
}

fn min_diagonal() -> Rational {
    rat(1, 10)
}

pub fn cycle_impossibility_evidence(
    n_even: usize,
    trials: u64,
    max_length: usize,
    seed: u64,
) -> Result<EvidenceReport> {
    if n_even < 4 || !n_even.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "cycle length must be even and at least 4, got {n_even}"
        )));
    }
    if max_length == 0 {
        return Err(Error::Precondition("max_length must be at least 1".into()));
    }
    let g = directed_cycle(n_even);
    let mut report = EvidenceReport {
        cycle_length: n_even,
        trials,
        max_length,
        seed,
        rank_one_products: 0,
        lemma_checks: 0,
        lemma_violations: 0,
        first_failure: None,
        note: EVIDENCE_NOTE,
    };
    let mut x0 = vec![Rational::from_integer(0.into()); n_even];
    x0[0] = rat(1, 1);
    x0[1] = rat(1, 1);
    let x0 = RationalVector::new(x0);

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let len = rng.gen_range(1..=max_length);
        let seq = random_consistent_sequence(&g, &mut rng, len, &min_diagonal())?;
        let mut failure = None;

        if is_rank_one_stochastic(&sequence_product(&seq)?) {
            report.rank_one_products += 1;
            failure = Some("rank_one_product");
        }

        let mut states = vec![x0.clone()];
        for a in seq.matrices() {
            states.push(a.apply(states.last().unwrap())?);
        }
        let c = states.last().unwrap().mean();
        for x in &states[1..] {
            let shifted = RationalVector::new(x.entries().iter().map(|v| v - &c).collect());
            report.lemma_checks += 1;
            if !has_same_sign_pair(&shifted) {
                report.lemma_violations += 1;
                failure.get_or_insert("sign_lemma");
            }
        }

        if let (Some(kind), None) = (failure, &report.first_failure) {
            report.first_failure = Some(EvidenceFailure {
                trial,
                kind,
                sequence: seq,
            });
        }
    }
    Ok(report)
}
