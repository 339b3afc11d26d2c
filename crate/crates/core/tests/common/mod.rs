//! Brute-force reference implementations used as test oracles. None of
//! these share code with the library's algorithms: distances come from
//! explicit simple-path enumeration or Floyd–Warshall, PageRank from a
//! dense transition matrix.

#![allow(dead_code)]

use commgraph::Graph;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// G(n, p) graph from a seeded generator, independent of `synth`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (rng.next_u32() as f64 / u32::MAX as f64) < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for e in g.edges() {
        a[e.u][e.v] = e.weight;
        a[e.v][e.u] = e.weight;
    }
    a
}

/// Every simple path from `s` to `t`, as node sequences.
pub fn simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, t: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for w in g.neighbor_ids(u).collect::<Vec<_>>() {
            if !on_path[w] {
                on_path[w] = true;
                path.push(w);
                walk(g, t, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    on_path[s] = true;
    walk(g, t, &mut vec![s], &mut on_path, &mut out);
    out
}

/// Shortest paths between `s` and `t` by enumeration (empty if disconnected).
pub fn shortest_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let all = simple_paths(g, s, t);
    let Some(best) = all.iter().map(Vec::len).min() else {
        return Vec::new();
    };
    all.into_iter().filter(|p| p.len() == best).collect()
}

/// Hop distances by path enumeration; `None` when unreachable.
pub fn enumerated_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    (0..n)
        .map(|s| {
            (0..n)
                .map(|t| simple_paths(g, s, t).iter().map(|p| p.len() - 1).min())
                .collect()
        })
        .collect()
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for e in g.edges() {
        d[e.u][e.v] = 1;
        d[e.v][e.u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| (x < inf).then_some(x)).collect())
        .collect()
}

/// Raw node betweenness over unordered pairs, by path enumeration.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, s, t);
            if paths.is_empty() {
                continue;
            }
            for (v, x) in score.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                *x += through as f64 / paths.len() as f64;
            }
        }
    }
    score
}

/// Edge betweenness keyed by `(u, v)` with `u < v`, by path enumeration.
pub fn brute_edge_betweenness(g: &Graph) -> Vec<((usize, usize), f64)> {
    let n = g.node_count();
    let mut out: Vec<((usize, usize), f64)> = g.edges().map(|e| ((e.u, e.v), 0.0)).collect();
    for s in 0..n {
        for t in s + 1..n {
            let paths = shortest_paths(g, s, t);
            for ((u, v), x) in out.iter_mut() {
                let through = paths
                    .iter()
                    .filter(|p| p.windows(2).any(|w| (w[0] == *u && w[1] == *v) || (w[0] == *v && w[1] == *u)))
                    .count();
                if !paths.is_empty() {
                    *x += through as f64 / paths.len() as f64;
                }
            }
        }
    }
    out
}

/// Normalized closeness with component scaling, from a distance matrix.
pub fn oracle_closeness(dist: &[Vec<Option<usize>>]) -> Vec<f64> {
    let n = dist.len();
    dist.iter()
        .enumerate()
        .map(|(x, row)| {
            let finite: Vec<usize> = row
                .iter()
                .enumerate()
                .filter_map(|(y, d)| if y != x { *d } else { None })
                .collect();
            let total: usize = finite.iter().sum();
            if total == 0 {
                0.0
            } else {
                let r = finite.len() as f64;
                (r / total as f64) * (r / (n - 1) as f64)
            }
        })
        .collect()
}

pub fn oracle_harmonic(dist: &[Vec<Option<usize>>]) -> Vec<f64> {
    let n = dist.len();
    dist.iter()
        .enumerate()
        .map(|(x, row)| {
            let s: f64 = row
                .iter()
                .enumerate()
                .filter_map(|(y, d)| if y != x { d.map(|d| 1.0 / d as f64) } else { None })
                .sum();
            if n > 1 {
                s / (n - 1) as f64
            } else {
                0.0
            }
        })
        .collect()
}

/// PageRank by power iteration on the dense Google matrix.
pub fn dense_pagerank(g: &Graph, damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let a = adjacency_matrix(g);
    let out: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    // google[i][j] = probability of stepping from j to i
    let mut google = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let follow = if out[j] > 0.0 { a[j][i] / out[j] } else { 1.0 / n as f64 };
            google[i][j] = (1.0 - damping) / n as f64 + damping * follow;
        }
    }
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..100_000 {
        let next: Vec<f64> = (0..n).map(|i| (0..n).map(|j| google[i][j] * x[j]).sum()).collect();
        let change: f64 = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).sum();
        x = next;
        if change < 1e-15 {
            break;
        }
    }
    x
}

/// Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j) / 2m.
pub fn brute_modularity(g: &Graph, labels: &[usize]) -> f64 {
    let a = adjacency_matrix(g);
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let n = g.node_count();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Simple graphs on `1..=max_n` nodes with edge probability drawn per case.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, keep)| *keep).map(|(p, _)| p).collect();
            Graph::from_edges(n, &edges)
        })
}

/// A graph together with a node permutation.
pub fn arb_graph_and_perm(max_n: usize) -> impl proptest::strategy::Strategy<Value = (Graph, Vec<usize>)> {
    use proptest::prelude::*;
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.node_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}
