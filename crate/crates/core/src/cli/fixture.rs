//! Hard-coded example data: the directed 4-node graph with one bidirectional
//! chord and its four averaging matrices, plus the 9-node layering tree.

use crate::graph::Graph;
use crate::ratlinalg::{MatrixSequence, RationalMatrix};

/// Directed cycle `1 -> 4 -> 3 -> 2 -> 1` plus the bidirectional edge `{1, 3}`.
pub fn fixture_graph() -> Graph {
    Graph::new(4, vec![(2, 1), (3, 2), (4, 3), (1, 4), (1, 3), (3, 1)]).expect("fixture graph")
}

/// `(A_1, A_2, A_3, A_4)` with `A_1 = A_3`, `A_2 = A_4`, entries in halves.
///
/// `A_1` averages each node with its successor on the directed cycle. `A_2`
/// does the same for nodes 2 and 4 while nodes 1 and 3 average with each other
/// over the bidirectional edge.
pub fn fixture_sequence() -> MatrixSequence {
    const H: (i64, i64) = (1, 2);
    const Z: (i64, i64) = (0, 1);
    let a1 =
        RationalMatrix::from_fracs(&[&[H, H, Z, Z], &[Z, H, H, Z], &[Z, Z, H, H], &[H, Z, Z, H]])
            .expect("A_1");
    let a2 =
        RationalMatrix::from_fracs(&[&[H, Z, H, Z], &[Z, H, H, Z], &[H, Z, H, Z], &[H, Z, Z, H]])
            .expect("A_2");
    MatrixSequence::new(4, vec![a1.clone(), a2.clone(), a1, a2]).expect("fixture sequence")
}

#[derive(Clone, Debug)]
pub struct PaperFixture {
    pub graph: Graph,
    pub sequence: MatrixSequence,
}

impl PaperFixture {
    pub fn load() -> Self {
        PaperFixture {
            graph: fixture_graph(),
            sequence: fixture_sequence(),
        }
    }
}

/// 9-node tree used to illustrate the layering from leaf 1.
pub fn layering_tree() -> Graph {
    Graph::undirected(
        9,
        vec![
            (1, 2),
            (2, 3),
            (2, 4),
            (4, 5),
            (5, 6),
            (5, 8),
            (6, 7),
            (8, 9),
        ],
    )
    .expect("layering tree")
}
