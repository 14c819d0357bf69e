//! Exact averaging sequences on graphs with a bidirectional spanning tree.
//!
//! The tree is peeled one leaf at a time (smallest id first). Rebuilding in
//! reverse, each re-added leaf `v0` is merged into the already-averaged
//! subtree `S` by a short run of matrices that drives the canonical
//! correction vector (`1` at `v0`, `-gamma` on `S`) to zero along the
//! layering of `S + v0` seen from `v0`:
//!
//! * `i` in `V_k`: `-gamma` before step `k`, `1/2^k` at step `k`, `0` after;
//! * `i` in `L_k`: `-gamma` before step `k`, `0` from step `k` on.
//!
//! Since stochastic matrices fix constants, the same matrices carry
//! `(x_v0, m_S, ..., m_S)` to the merged (weighted) mean.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bidirectional_components, find_spanning_tree, layer_decompose, Graph};
use crate::graph::{SpanningTree, TreeLayering};
use crate::ratlinalg::{rat, MatrixSequence, Rational, RationalMatrix, RationalVector};

/// `1 / 2^k`
fn inv_pow2(k: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

/// Planned value trajectory of one absorption stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionSchedule {
    pub layering: TreeLayering,
    pub gamma: Rational,
    /// `(node, step) -> value` for every layering node and `step in 0..=depth`.
    pub targets: BTreeMap<(usize, usize), Rational>,
}

impl CorrectionSchedule {
    pub fn new(layering: TreeLayering, gamma: Rational) -> Self {
        let depth = layering.depth();
        let mut targets = BTreeMap::new();
        for (k, layer) in layering.v_layers.iter().enumerate() {
            for &i in layer {
                for t in 0..=depth {
                    let value = if t < k {
                        -gamma.clone()
                    } else if t == k {
                        inv_pow2(k)
                    } else {
                        Rational::zero()
                    };
                    targets.insert((i, t), value);
                }
            }
        }
        for (k, layer) in layering.l_layers.iter().enumerate() {
            for &i in layer {
                for t in 0..=depth {
                    let value = if t < k {
                        -gamma.clone()
                    } else {
                        Rational::zero()
                    };
                    targets.insert((i, t), value);
                }
            }
        }
        CorrectionSchedule {
            layering,
            gamma,
            targets,
        }
    }

    pub fn target(&self, node: usize, step: usize) -> Option<&Rational> {
        self.targets.get(&(node, step))
    }
}

/// The `depth`-many matrices that absorb `layering.v0` into the rest of `tree`.
///
/// Matrices span all `tree.ambient_order()` nodes; nodes outside the tree get
/// identity rows.
pub fn absorption_steps(
    tree: &SpanningTree,
    layering: &TreeLayering,
    gamma: &Rational,
) -> Result<MatrixSequence> {
    if !gamma.is_positive() {
        return Err(Error::NonPositiveGamma(gamma.clone()));
    }
    if layering.node_count() != tree.len() || layering.nodes().any(|v| !tree.contains(v)) {
        return Err(Error::Precondition(
            "layering does not match the tree".into(),
        ));
    }
    let n = tree.ambient_order();
    let mut seq = MatrixSequence::empty(n);
    for k in 1..=layering.depth() {
        let prev = inv_pow2(k - 1);
        let denom = &prev + gamma;
        let mut a = RationalMatrix::identity(n);
        let mut mix = |i: usize, j: usize, alpha: Rational| {
            let rest = Rational::one() - &alpha;
            a.set(i - 1, i - 1, alpha);
            a.set(i - 1, j - 1, rest);
        };
        let parent = |i: usize| {
            layering.parent_in_tree.get(&i).copied().ok_or_else(|| {
                Error::ContractBreach(format!("node {i} has no parent in the layering"))
            })
        };
        for &i in &layering.v_layers[k] {
            mix(i, parent(i)?, inv_pow2(k) / &denom);
        }
        for &i in &layering.l_layers[k] {
            mix(i, parent(i)?, &prev / &denom);
        }
        for &i in &layering.v_layers[k - 1] {
            let child = layering.designated_child.get(&i).copied().ok_or_else(|| {
                Error::ContractBreach(format!("non-leaf {i} has no child in the layering"))
            })?;
            mix(i, child, gamma / &denom);
        }
        seq.push(a)?;
    }
    Ok(seq)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScheduleMismatch {
    Length {
        expected: usize,
        actual: usize,
    },
    Value {
        node: usize,
        step: usize,
        expected: Rational,
        actual: Rational,
    },
    Untouched {
        node: usize,
        step: usize,
    },
}

impl fmt::Display for ScheduleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleMismatch::Length { expected, actual } => {
                write!(f, "expected {expected} steps, got {actual}")
            }
            ScheduleMismatch::Value {
                node,
                step,
                expected,
                actual,
            } => {
                write!(
                    f,
                    "node {node} at step {step}: expected {expected}, got {actual}"
                )
            }
            ScheduleMismatch::Untouched { node, step } => {
                write!(f, "node {node} outside the stage changed at step {step}")
            }
        }
    }
}

/// Runs the canonical correction vector through `suffix` and compares every
/// intermediate state with the planned trajectory, exactly.
#[allow(clippy::result_large_err)]
pub fn verify_schedule(
    suffix: &MatrixSequence,
    layering: &TreeLayering,
    gamma: &Rational,
) -> std::result::Result<(), ScheduleMismatch> {
    let depth = layering.depth();
    if suffix.len() != depth {
        return Err(ScheduleMismatch::Length {
            expected: depth,
            actual: suffix.len(),
        });
    }
    let schedule = CorrectionSchedule::new(layering.clone(), gamma.clone());
    let n = suffix.order();
    let mut x: Vec<Rational> = (1..=n)
        .map(|v| {
            schedule
                .target(v, 0)
                .cloned()
                .unwrap_or_else(Rational::zero)
        })
        .collect();
    for (t, a) in suffix.matrices().iter().enumerate() {
        let step = t + 1;
        x = a
            .apply(&RationalVector::new(x))
            .expect("suffix matrices share the order")
            .0;
        for (idx, value) in x.iter().enumerate() {
            let node = idx + 1;
            match schedule.target(node, step) {
                Some(expected) if expected != value => {
                    return Err(ScheduleMismatch::Value {
                        node,
                        step,
                        expected: expected.clone(),
                        actual: value.clone(),
                    });
                }
                None if !value.is_zero() => return Err(ScheduleMismatch::Untouched { node, step }),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Positive weights summing exactly to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RationalVector", into = "RationalVector")]
pub struct WeightVector(RationalVector);

impl TryFrom<RationalVector> for WeightVector {
    type Error = Error;
    fn try_from(v: RationalVector) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for RationalVector {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

impl WeightVector {
    pub fn new(weights: RationalVector) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some((i, w)) = weights
            .entries()
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_positive())
        {
            return Err(Error::InvalidWeights(format!(
                "weight of node {} is {w}",
                i + 1
            )));
        }
        let total = weights.sum();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(n: usize) -> Self {
        WeightVector(RationalVector::constant(n, rat(1, n as i64)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight of node `v` (1-based).
    pub fn weight(&self, v: usize) -> &Rational {
        &self.0[v - 1]
    }

    pub fn as_vector(&self) -> &RationalVector {
        &self.0
    }
}

/// One leaf absorption: `v0` joins the averaged subtree of size `subtree_size`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub v0: usize,
    pub subtree_size: usize,
    pub gamma: Rational,
    pub layering: TreeLayering,
    pub steps: MatrixSequence,
}

fn spanning_tree_or_error(g: &Graph) -> Result<SpanningTree> {
    find_spanning_tree(g).ok_or_else(|| Error::NoSpanningTree {
        components: bidirectional_components(g),
    })
}

/// All absorption stages, in application order. `gamma(v0, subtree)` picks
/// the correction magnitude for each re-added leaf.
pub fn construct_stages(
    g: &Graph,
    mut gamma: impl FnMut(usize, &SpanningTree) -> Rational,
) -> Result<Vec<Stage>> {
    let mut tree = spanning_tree_or_error(g)?;
    let mut removed = Vec::new();
    while tree.len() > 1 {
        let leaf = tree
            .smallest_leaf()
            .expect("trees with two or more nodes have leaves");
        let smaller = tree.without_leaf(leaf)?;
        removed.push((leaf, tree, smaller.clone()));
        tree = smaller;
    }
    let mut stages = Vec::with_capacity(removed.len());
    for (v0, with_v0, subtree) in removed.into_iter().rev() {
        let gamma = gamma(v0, &subtree);
        let layering = layer_decompose(&with_v0, v0)?;
        let steps = absorption_steps(&with_v0, &layering, &gamma)?;
        stages.push(Stage {
            v0,
            subtree_size: subtree.len(),
            gamma,
            layering,
            steps,
        });
    }
    Ok(stages)
}

fn concat(n: usize, stages: Vec<Stage>) -> Result<MatrixSequence> {
    let mut seq = MatrixSequence::empty(n);
    for stage in stages {
        seq.extend(stage.steps)?;
    }
    Ok(seq)
}

/// A sequence whose exact product is `(1/n) 1 1^T`.
pub fn construct_average_sequence(g: &Graph) -> Result<MatrixSequence> {
    let stages = construct_stages(g, |_, subtree| rat(1, subtree.len() as i64))?;
    concat(g.n(), stages)
}

/// A sequence whose exact product is `1 w^T`.
pub fn construct_weighted_sequence(g: &Graph, w: &WeightVector) -> Result<MatrixSequence> {
    if w.len() != g.n() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for a graph with {} nodes",
            w.len(),
            g.n()
        )));
    }
    let stages = construct_stages(g, |v0, subtree| {
        let mass = subtree
            .nodes()
            .fold(Rational::zero(), |acc, j| acc + w.weight(j));
        w.weight(v0) / mass
    })?;
    concat(g.n(), stages)
}
