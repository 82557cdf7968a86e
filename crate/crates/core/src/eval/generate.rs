//! Small synthetic graph families for tests and benchmarks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ust::RngStream;

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// G(n, p): every pair is an edge independently with probability `p`.
    ErdosRenyi { n: usize, p: f64 },
    Path { n: usize },
    /// Vertex 0 joined to vertices `1..n`.
    Star { n: usize },
    Complete { n: usize },
    /// `rows x cols` lattice, vertex `r * cols + c`.
    Grid { rows: usize, cols: usize },
}

/// Builds an unweighted graph; only `ErdosRenyi` consumes the seed.
pub fn generate(model: &Model, seed: u64) -> Result<Graph> {
    let need_vertices = |n: usize| {
        if n == 0 {
            Err(Error::Parameter("vertex count must be positive".into()))
        } else {
            Ok(())
        }
    };
    let unit = |(u, v)| (u, v, 1.0);
    match *model {
        Model::ErdosRenyi { n, p } => {
            need_vertices(n)?;
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::Parameter(format!("edge probability must lie in (0, 1], got {p}")));
            }
            let mut rng = RngStream::new(seed, 0).rng();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random::<f64>() < p {
                        edges.push((u, v, 1.0));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        Model::Path { n } => {
            need_vertices(n)?;
            Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).map(unit))
        }
        Model::Star { n } => {
            need_vertices(n)?;
            Graph::from_edges(n, (1..n).map(|v| (0, v)).map(unit))
        }
        Model::Complete { n } => {
            need_vertices(n)?;
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.map(unit))
        }
        Model::Grid { rows, cols } => {
            need_vertices(rows * cols)?;
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1), 1.0));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c), 1.0));
                    }
                }
            }
            Graph::from_edges(rows * cols, edges)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_center_degree() {
        let g = generate(&Model::Star { n: 4 }, 0).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let model = Model::ErdosRenyi { n: 100, p: 0.05 };
        let a = generate(&model, 17).unwrap();
        let b = generate(&model, 17).unwrap();
        let c = generate(&model, 18).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        // 4950 pairs at p = 0.05: mean 247.5, sd ~15.3
        assert!((150..350).contains(&a.edge_count()), "{}", a.edge_count());
    }

    #[test]
    fn grid_counts() {
        let g = generate(&Model::Grid { rows: 3, cols: 3 }, 0).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn path_and_complete() {
        assert_eq!(generate(&Model::Path { n: 5 }, 0).unwrap().edge_count(), 4);
        assert_eq!(generate(&Model::Complete { n: 5 }, 0).unwrap().edge_count(), 10);
        assert_eq!(generate(&Model::Path { n: 1 }, 0).unwrap().edge_count(), 0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(&Model::ErdosRenyi { n: 10, p: 0.0 }, 0).is_err());
        assert!(generate(&Model::ErdosRenyi { n: 10, p: 1.5 }, 0).is_err());
        assert!(generate(&Model::Path { n: 0 }, 0).is_err());
        assert!(generate(&Model::Grid { rows: 0, cols: 3 }, 0).is_err());
    }
}
