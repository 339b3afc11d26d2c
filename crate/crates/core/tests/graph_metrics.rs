mod common;

use commgraph::graph::{bfs_distances, connected_components, UNREACHABLE};
use commgraph::metrics::{global_metrics, local_clustering};
use commgraph::Graph;
use proptest::prelude::*;

use common::*;

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges)
}

proptest! {
    #[test]
    fn handshake(g in arb_graph(12)) {
        let degree_sum: usize = (0..g.node_count()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn bfs_matches_floyd_warshall(g in arb_graph(10)) {
        let fw = floyd_warshall(&g);
        for s in 0..g.node_count() {
            let d = bfs_distances(&g, s);
            for t in 0..g.node_count() {
                let want = fw[s][t].unwrap_or(UNREACHABLE);
                prop_assert_eq!(d[t], want);
            }
        }
    }

    #[test]
    fn bfs_matches_path_enumeration(g in arb_graph(6)) {
        let dist = enumerated_distances(&g);
        for s in 0..g.node_count() {
            let d = bfs_distances(&g, s);
            for t in 0..g.node_count() {
                prop_assert_eq!(d[t], dist[s][t].unwrap_or(UNREACHABLE));
            }
        }
    }

    #[test]
    fn triangle_inequality(g in arb_graph(10)) {
        let n = g.node_count();
        let rows: Vec<_> = (0..n).map(|s| bfs_distances(&g, s)).collect();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(rows[a][b], rows[b][a]);
                for c in 0..n {
                    if rows[a][b] != UNREACHABLE && rows[b][c] != UNREACHABLE {
                        prop_assert!(rows[a][c] <= rows[a][b] + rows[b][c]);
                    }
                }
            }
        }
    }

    #[test]
    fn one_component_iff_no_sentinel(g in arb_graph(10)) {
        let components = connected_components(&g).community_count();
        let any_unreachable = (0..g.node_count()).any(|s| bfs_distances(&g, s).contains(&UNREACHABLE));
        prop_assert_eq!(components == 1, !any_unreachable);
        let m = global_metrics(&g).unwrap();
        prop_assert_eq!(m.is_connected, components == 1);
        prop_assert_eq!(m.component_count, components);
    }

    #[test]
    fn path_metrics_match_floyd_warshall(g in arb_graph(10)) {
        let fw = floyd_warshall(&g);
        let finite: Vec<usize> = fw
            .iter()
            .enumerate()
            .flat_map(|(s, row)| row.iter().enumerate().filter(move |(t, _)| *t != s).filter_map(|(_, d)| *d))
            .collect();
        let m = global_metrics(&g).unwrap();
        prop_assert_eq!(m.diameter, finite.iter().copied().max().unwrap_or(0));
        let apl = if finite.is_empty() { 0.0 } else { finite.iter().sum::<usize>() as f64 / finite.len() as f64 };
        prop_assert!((m.average_path_length - apl).abs() < 1e-12);
    }

    #[test]
    fn adding_an_edge_never_lengthens_paths(g in arb_graph(9), pick in any::<prop::sample::Index>()) {
        let n = g.node_count();
        let missing: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
        prop_assume!(!missing.is_empty());
        let (u, v) = missing[pick.index(missing.len())];
        let mut edges: Vec<_> = g.edges().map(|e| (e.u, e.v)).collect();
        edges.push((u, v));
        let h = Graph::from_edges(n, &edges);
        let before = floyd_warshall(&g);
        let after = floyd_warshall(&h);
        for s in 0..n {
            for t in 0..n {
                if let Some(d) = before[s][t] {
                    prop_assert!(after[s][t].unwrap() <= d);
                }
            }
        }
        // restricted to a connected graph, the summary statistics shrink too
        let (mg, mh) = (global_metrics(&g).unwrap(), global_metrics(&h).unwrap());
        if mg.is_connected {
            prop_assert!(mh.diameter <= mg.diameter);
            prop_assert!(mh.average_path_length <= mg.average_path_length + 1e-12);
        }
    }

    #[test]
    fn clustering_in_unit_interval(g in arb_graph(10)) {
        for v in 0..g.node_count() {
            let c = local_clustering(&g, v);
            prop_assert!((0.0..=1.0).contains(&c));
        }
    }

    #[test]
    fn permutation_preserves_metrics((g, perm) in arb_graph_and_perm(10)) {
        let a = global_metrics(&g).unwrap();
        let b = global_metrics(&g.permuted(&perm)).unwrap();
        prop_assert_eq!(a.diameter, b.diameter);
        prop_assert_eq!(a.component_count, b.component_count);
        prop_assert!((a.average_path_length - b.average_path_length).abs() < 1e-12);
        prop_assert!((a.average_clustering - b.average_clustering).abs() < 1e-12);
    }
}

#[test]
fn complete_graph_metrics() {
    for n in 2..=8 {
        let m = global_metrics(&complete(n)).unwrap();
        assert_eq!(m.diameter, 1);
        assert_eq!(m.average_path_length, 1.0);
        assert_eq!(m.density, 1.0);
        assert_eq!(m.average_degree, (n - 1) as f64);
        if n >= 3 {
            assert_eq!(m.average_clustering, 1.0);
        }
    }
}

#[test]
fn parallel_edges_collapse_and_self_loops_vanish() {
    let g = Graph::from_weighted_edges(3, [(0, 1, 1.0), (1, 0, 2.0), (2, 2, 1.0), (1, 2, 1.0)]);
    assert_eq!(g.edge_count(), 2);
    assert_eq!(g.weight(0, 1), Some(3.0));
    assert!(!g.has_edge(2, 2));
}

#[test]
fn labels_survive_permutation() {
    let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
    let h = g.permuted(&[3, 2, 1, 0]);
    for v in 0..4 {
        assert_eq!(g.label(v), h.label(3 - v));
    }
    assert!(h.has_edge(3, 2) && h.has_edge(1, 0));
}
