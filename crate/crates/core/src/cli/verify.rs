use num_traits::{One, Signed};
use serde::Serialize;

use crate::graph::Graph;
use crate::ratlinalg::{first_inconsistency, is_average_matrix, is_rank_one_stochastic};
use crate::ratlinalg::{sequence_product, MatrixSequence, Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Goal {
    Consensus,
    Average,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    pub check: &'static str,
    /// 1-based index `t` of `A_t`; absent for whole-sequence checks.
    pub matrix: Option<usize>,
    /// 1-based `(row, column)`.
    pub entry: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub goal: Goal,
    pub n: usize,
    pub length: usize,
    pub passed: bool,
    pub failures: Vec<CheckFailure>,
    pub product: Option<RationalMatrix>,
}

fn matrix_failures(t: usize, a: &RationalMatrix, g: &Graph, out: &mut Vec<CheckFailure>) {
    let n = a.order();
    let negative = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, j).is_negative());
    if let Some((i, j)) = negative {
        out.push(CheckFailure {
            check: "stochastic",
            matrix: Some(t),
            entry: Some((i + 1, j + 1)),
            detail: format!("negative entry {}", a.get(i, j)),
        });
    } else if let Some((i, sum)) = (0..n)
        .map(|i| (i, a.row(i).iter().sum::<Rational>()))
        .find(|(_, s)| !s.is_one())
    {
        out.push(CheckFailure {
            check: "stochastic",
            matrix: Some(t),
            entry: None,
            detail: format!("row {} sums to {sum}", i + 1),
        });
    }
    if let Some(i) = (0..n).find(|&i| !a.get(i, i).is_positive()) {
        out.push(CheckFailure {
            check: "positive_diagonal",
            matrix: Some(t),
            entry: Some((i + 1, i + 1)),
            detail: format!("diagonal entry {}", a.get(i, i)),
        });
    }
    if let Ok(Some((i, j))) = first_inconsistency(a, g) {
        out.push(CheckFailure {
            check: "consistent",
            matrix: Some(t),
            entry: Some((i + 1, j + 1)),
            detail: format!("positive weight needs arc ({},{})", j + 1, i + 1),
        });
    }
}

/// Checks every matrix (stochastic, positive diagonal, consistent with `g`)
/// and then the product against the goal. Failures are report content.
pub fn verify_sequence(g: &Graph, seq: &MatrixSequence, goal: Goal) -> VerificationReport {
    let mut failures = Vec::new();
    if seq.order() != g.n() {
        failures.push(CheckFailure {
            check: "dimension",
            matrix: None,
            entry: None,
            detail: format!(
                "sequence order {} but graph has {} nodes",
                seq.order(),
                g.n()
            ),
        });
        return VerificationReport {
            goal,
            n: g.n(),
            length: seq.len(),
            passed: false,
            failures,
            product: None,
        };
    }
    for (t, a) in seq.matrices().iter().enumerate() {
        matrix_failures(t + 1, a, g, &mut failures);
    }
    let product = sequence_product(seq).expect("orders checked");
    let (ok, check) = match goal {
        Goal::Consensus => (is_rank_one_stochastic(&product), "product_rank_one"),
        Goal::Average => (is_average_matrix(&product), "product_average"),
    };
    if !ok {
        failures.push(CheckFailure {
            check,
            matrix: None,
            entry: None,
            detail: match goal {
                Goal::Consensus => "product is not of the form 1 v^T".into(),
                Goal::Average => "product is not (1/n) 1 1^T".into(),
            },
        });
    }
    VerificationReport {
        goal,
        n: g.n(),
        length: seq.len(),
        passed: failures.is_empty(),
        failures,
        product: Some(product),
    }
}
