mod common;

use std::collections::{BTreeSet, VecDeque};

use ftconsensus::analysis::{
    assess_feasibility, random_consistent_matrix, random_consistent_sequence, trial_rng, Status,
};
use ftconsensus::cli::simulate::{simulate, Mode, States, DEFAULT_TOLERANCE};
use ftconsensus::constructor::{
    absorption_steps, construct_average_sequence, construct_stages, verify_schedule,
};
use ftconsensus::graph::generators::{random_digraph, random_tree, tree_from_pruefer};
use ftconsensus::graph::{find_spanning_tree, layer_decompose, Graph, DEFAULT_NODE_LIMIT};
use ftconsensus::ratlinalg::{
    has_positive_diagonal, is_average_matrix, is_rank_one_stochastic, is_stochastic, mat_mul, rat,
    sequence_product, MatrixSequence, Rational, RationalMatrix, RationalVector,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;

fn min_diag() -> Rational {
    rat(1, 10)
}

fn random_sequence(seed: u64, n: usize, len: usize) -> (Graph, MatrixSequence) {
    let mut rng = trial_rng(seed, 0);
    let g = random_digraph(n, 0.5, &mut rng);
    let seq = random_consistent_sequence(&g, &mut rng, len, &min_diag()).unwrap();
    (g, seq)
}

fn random_rational_vector(seed: u64, n: usize) -> RationalVector {
    let mut rng = trial_rng(seed, 1);
    RationalVector::new(
        (0..n)
            .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
            .collect(),
    )
}

/// Distances by plain BFS over the undirected edge set.
fn bfs_distances(g: &Graph, src: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n() + 1];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for v in g.out_neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(dist[u].unwrap() + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_stay_stochastic_with_positive_diagonal(seed in any::<u64>(), n in 1usize..=6, len in 0usize..=6) {
        let (g, seq) = random_sequence(seed, n, len);
        for a in seq.matrices() {
            prop_assert!(common::matrix_admissible(a, &g));
        }
        let p = sequence_product(&seq).unwrap();
        prop_assert!(is_stochastic(&p));
        prop_assert!(has_positive_diagonal(&p));
    }

    #[test]
    fn sequence_product_matches_schoolbook(seed in any::<u64>(), n in 1usize..=6, len in 0usize..=6) {
        let (_, seq) = random_sequence(seed, n, len);
        prop_assert_eq!(common::dense(&sequence_product(&seq).unwrap()), common::naive_product(&seq));
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>(), n in 1usize..=6) {
        let (_, seq) = random_sequence(seed, n, 3);
        let [a, b, c] = [&seq.matrices()[0], &seq.matrices()[1], &seq.matrices()[2]];
        let left = mat_mul(&mat_mul(a, b).unwrap(), c).unwrap();
        let right = mat_mul(a, &mat_mul(b, c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rank_one_stochastic_is_idempotent(raw in prop::collection::vec(0i64..20, 1..=7)) {
        let total: i64 = raw.iter().sum();
        prop_assume!(total > 0);
        let v = RationalVector::new(raw.iter().map(|&r| rat(r, total)).collect());
        let p = RationalMatrix::rank_one(&v);
        prop_assert!(is_rank_one_stochastic(&p));
        prop_assert_eq!(mat_mul(&p, &p).unwrap(), p);
    }

    #[test]
    fn average_implies_rank_one(n in 1usize..=12) {
        let j = RationalMatrix::averaging(n);
        prop_assert!(is_average_matrix(&j));
        prop_assert!(is_rank_one_stochastic(&j));
    }

    #[test]
    fn rank_one_absorbs_stochastic_on_the_left(seed in any::<u64>(), n in 1usize..=6) {
        let (_, seq) = random_sequence(seed, n, 1);
        let j = RationalMatrix::averaging(n);
        prop_assert!(is_rank_one_stochastic(&mat_mul(&j, &seq.matrices()[0]).unwrap()));
        prop_assert_eq!(mat_mul(&seq.matrices()[0], &j).unwrap(), j);
    }

    #[test]
    fn layering_partitions_the_tree(prufer in prop::collection::vec(1usize..=20, 0..=18), pick in any::<prop::sample::Index>()) {
        let n = prufer.len() + 2;
        let prufer: Vec<usize> = prufer.iter().map(|&v| (v - 1) % n + 1).collect();
        let g = tree_from_pruefer(&prufer);
        let t = find_spanning_tree(&g).unwrap();
        let leaves: Vec<usize> = t.nodes().filter(|&v| t.is_leaf(v)).collect();
        let v0 = leaves[pick.index(leaves.len())];
        let l = layer_decompose(&t, v0).unwrap();
        let dist = bfs_distances(&g, v0);

        let mut seen = BTreeSet::new();
        for (k, (vs, ls)) in l.v_layers.iter().zip(&l.l_layers).enumerate() {
            for &v in vs.iter().chain(ls) {
                prop_assert!(seen.insert(v), "node {} in two layers", v);
                prop_assert_eq!(dist[v], Some(k));
            }
            for &v in vs {
                prop_assert!(k == 0 || !t.is_leaf(v));
            }
            for &v in ls {
                prop_assert!(k > 0 && t.is_leaf(v));
            }
        }
        prop_assert_eq!(seen.len(), n);
        for (&v, &p) in &l.parent_in_tree {
            prop_assert!(g.has_arc(v, p) && dist[p].unwrap() + 1 == dist[v].unwrap());
        }
        for (&v, &c) in &l.designated_child {
            let further: Vec<usize> = g.out_neighbors(v).filter(|&u| dist[u] > dist[v]).collect();
            prop_assert_eq!(Some(&c), further.iter().min());
        }
    }

    #[test]
    fn feasible_is_kept_when_arcs_are_added(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = trial_rng(seed, 2);
        let tree = random_tree(n, &mut rng);
        let extra = random_digraph(n, 0.3, &mut rng);
        let bigger = tree.with_arcs(extra.arcs()).unwrap();
        prop_assert_eq!(assess_feasibility(&tree, DEFAULT_NODE_LIMIT).unwrap().status, Status::Feasible);
        prop_assert_eq!(assess_feasibility(&bigger, DEFAULT_NODE_LIMIT).unwrap().status, Status::Feasible);
    }

    #[test]
    fn infeasible_is_kept_when_arcs_are_removed(seed in any::<u64>(), n in 1usize..=7) {
        let mut rng = trial_rng(seed, 3);
        let g = random_digraph(n, rng.gen_range(0.1..0.6), &mut rng);
        prop_assume!(assess_feasibility(&g, DEFAULT_NODE_LIMIT).unwrap().status == Status::Infeasible);
        let kept: Vec<(usize, usize)> = g.arcs().filter(|_| rng.gen_bool(0.7)).collect();
        let smaller = Graph::new(n, kept).unwrap();
        prop_assert_eq!(assess_feasibility(&smaller, DEFAULT_NODE_LIMIT).unwrap().status, Status::Infeasible);
    }

    #[test]
    fn constructor_averages_any_pruefer_tree(prufer in prop::collection::vec(1usize..=12, 0..=10)) {
        let n = prufer.len() + 2;
        let prufer: Vec<usize> = prufer.iter().map(|&v| (v - 1) % n + 1).collect();
        let g = tree_from_pruefer(&prufer);
        let seq = construct_average_sequence(&g).unwrap();
        prop_assert!(seq.len() <= n * (n - 1) / 2);
        for a in seq.matrices() {
            prop_assert!(common::matrix_admissible(a, &g));
        }
        prop_assert!(common::is_exact_average(&common::naive_product(&seq)));
    }

    #[test]
    fn every_stage_follows_its_schedule(seed in any::<u64>(), n in 2usize..=12) {
        let g = random_tree(n, &mut trial_rng(seed, 4));
        let stages = construct_stages(&g, |_, sub| rat(1, sub.len() as i64)).unwrap();
        for stage in &stages {
            prop_assert_eq!(verify_schedule(&stage.steps, &stage.layering, &stage.gamma), Ok(()));
        }
    }

    #[test]
    fn exact_simulation_ends_at_the_mean(seed in any::<u64>(), n in 1usize..=25) {
        let g = random_tree(n, &mut trial_rng(seed, 5));
        let seq = construct_average_sequence(&g).unwrap();
        let x0 = random_rational_vector(seed, n);
        let tr = simulate(&seq, &x0, Mode::Exact).unwrap();
        let States::Exact(states) = &tr.states else { panic!("exact mode") };
        let sum = x0.entries().iter().fold(rat(0, 1), |acc, v| acc + v);
        let mean = sum / rat(n as i64, 1);
        prop_assert_eq!(states.last().unwrap(), &RationalVector::constant(n, mean));
    }

    #[test]
    fn approximate_simulation_tracks_exact(seed in any::<u64>(), n in 1usize..=15) {
        let g = random_tree(n, &mut trial_rng(seed, 6));
        let seq = construct_average_sequence(&g).unwrap();
        let x0 = random_rational_vector(seed, n);
        let exact = simulate(&seq, &x0, Mode::Exact).unwrap();
        let approx = simulate(&seq, &x0, Mode::Approximate { tolerance: DEFAULT_TOLERANCE }).unwrap();
        let (States::Exact(e), States::Approximate(a)) = (&exact.states, &approx.states) else {
            panic!("modes")
        };
        for (es, as_) in e.iter().zip(a) {
            for (x, y) in es.entries().iter().zip(as_) {
                prop_assert!((x.to_f64().unwrap() - y).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn random_matrices_respect_the_diagonal_floor(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = trial_rng(seed, 7);
        let g = random_digraph(n, 0.4, &mut rng);
        let a = random_consistent_matrix(&g, &mut rng, &min_diag()).unwrap();
        prop_assert!(common::matrix_admissible(&a, &g));
        for i in 0..n {
            prop_assert!(*a.get(i, i) >= min_diag());
        }
    }

    #[test]
    fn files_round_trip(seed in any::<u64>(), n in 1usize..=6, len in 0usize..=4) {
        let (g, seq) = random_sequence(seed, n, len);
        let x = random_rational_vector(seed, n);
        let g2: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        let s2: MatrixSequence = serde_json::from_str(&serde_json::to_string(&seq).unwrap()).unwrap();
        let x2: RationalVector = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(g2, g);
        prop_assert_eq!(s2, seq);
        prop_assert_eq!(x2, x);
    }
}

#[test]
fn absorbing_a_leaf_reaches_zero_from_the_correction_vector() {
    let g = tree_from_pruefer(&[2, 2, 4]);
    let t = find_spanning_tree(&g).unwrap();
    let l = layer_decompose(&t, 1).unwrap();
    let gamma = rat(1, 4);
    let steps = absorption_steps(&t, &l, &gamma).unwrap();
    let mut x = RationalVector::new(
        (1..=5)
            .map(|v| if v == 1 { rat(1, 1) } else { -gamma.clone() })
            .collect(),
    );
    for a in steps.matrices() {
        x = a.apply(&x).unwrap();
    }
    assert_eq!(x, RationalVector::constant(5, rat(0, 1)));
}
