//! Instance generators and dense reference computations shared by the
//! integration tests and the acceptance suite.

#![allow(dead_code)]

use forest_closeness::eval::generate::{generate, Model};
use forest_closeness::graph::{AugmentedGraph, Graph};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ALPHAS: [f64; 3] = [0.5, 1.0, 2.0];

/// Copy of `g` with weights drawn uniformly from `[0.5, 2)`.
pub fn reweight(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<_> = g.edges().map(|(u, v, _)| (u, v, rng.random_range(0.5..2.0))).collect();
    Graph::from_edges(g.vertex_count(), edges).unwrap()
}

/// Random ER graph, path or star with `2 <= n <= max_n`, weighted half the time.
pub fn mixed_graph(index: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + index);
    let n = rng.random_range(2..=max_n);
    let model = match index % 3 {
        0 => Model::ErdosRenyi {
            n,
            p: rng.random_range(0.1..0.6),
        },
        1 => Model::Path { n },
        _ => Model::Star { n },
    };
    let g = generate(&model, index).unwrap();
    if rng.random_bool(0.5) {
        reweight(&g, &mut rng)
    } else {
        g
    }
}

/// Disjoint union of three mixed graphs, at least three components, at most
/// `max_n` vertices in total.
pub fn disconnected_graph(index: u64, max_n: usize) -> Graph {
    let part = max_n / 3;
    let a = mixed_graph(3 * index, part);
    let b = mixed_graph(3 * index + 1, part);
    let c = mixed_graph(3 * index + 2, part);
    let g = a.disjoint_union(&b).disjoint_union(&c);
    assert!(g.component_count() >= 3);
    g
}

/// Random connected graph: a random spanning tree plus extra edges.
pub fn connected_graph(n: usize, extra_p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v, 1.0));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra_p) {
                edges.push((u, v, 1.0));
            }
        }
    }
    // Extra edges may repeat tree edges; merge, then reset weights to 1.
    let g = Graph::from_edges(n, edges).unwrap();
    Graph::from_edges(n, g.edges().map(|(u, v, _)| (u, v, 1.0))).unwrap()
}

/// Dense Laplacian of the augmented graph built straight from its edge list,
/// universal vertex last.
pub fn dense_lstar(ag: &AugmentedGraph) -> DMatrix<f64> {
    let size = ag.vertex_count();
    let mut l = DMatrix::zeros(size, size);
    for (u, v, w) in ag.edges() {
        l[(u, u)] += w;
        l[(v, v)] += w;
        l[(u, v)] -= w;
        l[(v, u)] -= w;
    }
    l
}

/// Dense `(αL + I)^{-1}` built from the edge list.
pub fn dense_forest_matrix(g: &Graph, alpha: f64) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut m = DMatrix::identity(n, n);
    for (u, v, w) in g.edges() {
        let w = alpha * w;
        m[(u, u)] += w;
        m[(v, v)] += w;
        m[(u, v)] -= w;
        m[(v, u)] -= w;
    }
    m.try_inverse().unwrap()
}

/// Indices of `0..size` not in `removed`.
pub fn kept(size: usize, removed: &[usize]) -> Vec<usize> {
    (0..size).filter(|i| !removed.contains(i)).collect()
}

/// Inverse of `l` with the rows and columns in `removed` deleted.
pub fn grounded_inverse(l: &DMatrix<f64>, removed: &[usize]) -> DMatrix<f64> {
    let keep = kept(l.nrows(), removed);
    let sub = l.select_rows(&keep).select_columns(&keep);
    sub.try_inverse().unwrap()
}

/// Group farness: trace of the grounded inverse.
pub fn group_farness(l: &DMatrix<f64>, group: &[usize]) -> f64 {
    grounded_inverse(l, group).trace()
}

/// Every labelled connected graph on `n` vertices, as edge lists.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &(u, v))| (u, v, 1.0))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.component_count() == 1 {
            out.push(g);
        }
    }
    out
}
