mod common;

use commgraph::centrality::{
    betweenness_centrality, closeness_centrality, compute_all, degree_centrality, harmonic_centrality, pagerank,
    pagerank_step, rank_top_k, Measure, PageRankConfig, PageRankScale,
};
use commgraph::community::edge_betweenness;
use commgraph::{Error, Graph};
use proptest::prelude::*;

use common::*;

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

fn petersen() -> Graph {
    let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Graph::from_edges(10, &edges)
}

fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let edges: Vec<_> = (0..n)
        .flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))))
        .filter(|(u, v)| u < v)
        .collect();
    Graph::from_edges(n, &edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn raw_betweenness_matches_enumeration(g in arb_graph(7)) {
        let got = betweenness_centrality(&g, false).scores;
        prop_assert!(max_abs_diff(&got, &brute_betweenness(&g)) <= 1e-9);
    }

    #[test]
    fn edge_betweenness_matches_enumeration(g in arb_graph(7)) {
        let got = edge_betweenness(&g);
        let want = brute_edge_betweenness(&g);
        prop_assert_eq!(got.len(), want.len());
        for ((u, v), score) in want {
            let e = got.iter().find(|e| (e.u, e.v) == (u, v)).unwrap();
            prop_assert!((e.score - score).abs() <= 1e-9, "edge ({}, {}): {} vs {}", u, v, e.score, score);
        }
    }

    #[test]
    fn distance_measures_match_oracles(g in arb_graph(9)) {
        prop_assume!(g.node_count() >= 2);
        let dist = floyd_warshall(&g);
        prop_assert!(max_abs_diff(&closeness_centrality(&g, true).scores, &oracle_closeness(&dist)) <= 1e-12);
        prop_assert!(max_abs_diff(&harmonic_centrality(&g, true).scores, &oracle_harmonic(&dist)) <= 1e-12);
    }

    #[test]
    fn pagerank_matches_dense_iteration(g in arb_graph(8), damping in 0.05f64..0.95) {
        let cfg = PageRankConfig { damping, max_iter: 10_000, ..Default::default() };
        let got = pagerank(&g, &cfg).unwrap().scores;
        prop_assert!(max_abs_diff(&got, &dense_pagerank(&g, damping)) <= 1e-9);
    }

    #[test]
    fn pagerank_step_conserves_mass(g in arb_graph(12), damping in 0.05f64..0.95) {
        let n = g.node_count();
        let mut rank = vec![1.0 / n as f64; n];
        for _ in 0..30 {
            rank = pagerank_step(&g, &rank, damping);
            prop_assert!((rank.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn unnormalized_pagerank_is_scaled_by_n(g in arb_graph(10)) {
        let p = pagerank(&g, &PageRankConfig::default()).unwrap().scores;
        let u = pagerank(&g, &PageRankConfig { scale: PageRankScale::Unnormalized, ..Default::default() }).unwrap().scores;
        let n = g.node_count() as f64;
        for (a, b) in p.iter().zip(&u) {
            prop_assert!((a * n - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn scores_follow_relabelling((g, perm) in arb_graph_and_perm(9)) {
        prop_assume!(g.node_count() >= 2);
        let h = g.permuted(&perm);
        let cfg = PageRankConfig::default();
        let a = compute_all(&g, true, &cfg).unwrap();
        let b = compute_all(&h, true, &cfg).unwrap();
        for (va, vb) in a.iter().zip(&b) {
            for v in 0..g.node_count() {
                prop_assert!((va.scores[v] - vb.scores[perm[v]]).abs() <= 1e-9, "{}", va.measure);
            }
        }
    }

    #[test]
    fn normalized_scores_in_unit_interval(g in arb_graph(10)) {
        prop_assume!(g.node_count() >= 2);
        for vector in compute_all(&g, true, &PageRankConfig::default()).unwrap() {
            for x in vector.scores {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&x), "{}: {}", vector.measure, x);
            }
        }
    }
}

#[test]
fn vertex_transitive_graphs_have_constant_scores() {
    let graphs = [cycle(7), cycle(12), petersen(), hypercube(3), hypercube(4)];
    for g in &graphs {
        for vector in compute_all(g, true, &PageRankConfig::default()).unwrap() {
            let first = vector.scores[0];
            for &x in &vector.scores {
                assert!((x - first).abs() <= 1e-12, "{} not constant: {:?}", vector.measure, vector.scores);
            }
        }
    }
}

#[test]
fn star_scores() {
    let star = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    assert_eq!(betweenness_centrality(&star, true).scores[0], 1.0);
    assert_eq!(betweenness_centrality(&star, false).scores[0], 6.0);
    assert_eq!(closeness_centrality(&star, true).scores[0], 1.0);
    assert_eq!(degree_centrality(&star, true).unwrap().scores, vec![1.0, 0.25, 0.25, 0.25, 0.25]);
}

#[test]
fn degree_normalization_needs_two_nodes() {
    let g = Graph::from_edges(1, &[]);
    assert!(matches!(degree_centrality(&g, true), Err(Error::DegenerateGraph(_))));
    assert_eq!(degree_centrality(&g, false).unwrap().scores, vec![0.0]);
}

#[test]
fn pagerank_rejects_bad_input() {
    let g = cycle(4);
    for damping in [0.0, 1.0, -0.5, f64::NAN] {
        let cfg = PageRankConfig { damping, ..Default::default() };
        assert!(matches!(pagerank(&g, &cfg), Err(Error::InvalidParameter(_))));
    }
    let cfg = PageRankConfig { max_iter: 1, tolerance: 1e-15, ..Default::default() };
    let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
    assert!(matches!(pagerank(&star, &cfg), Err(Error::NotConverged { .. })));
    assert!(matches!(pagerank(&Graph::from_edges(0, &[]), &PageRankConfig::default()), Err(Error::EmptyGraph)));
}

#[test]
fn top_k_breaks_ties_by_label() {
    let g = cycle(6);
    let v = harmonic_centrality(&g, true);
    let top = rank_top_k(&g, &v, 3).unwrap();
    let labels: Vec<_> = top.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["n0", "n1", "n2"]);
    assert!(rank_top_k(&g, &v, 0).is_err());
    assert_eq!(rank_top_k(&g, &v, 100).unwrap().len(), 6);
}

#[test]
fn compute_all_order() {
    let measures: Vec<_> = compute_all(&cycle(5), true, &PageRankConfig::default())
        .unwrap()
        .into_iter()
        .map(|v| v.measure)
        .collect();
    assert_eq!(measures, Measure::ALL);
}
