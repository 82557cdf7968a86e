//! Forest closeness centrality on undirected weighted graphs.
//!
//! The forest matrix `Ω = (αL + I)^{-1}` of a graph defines the forest
//! distance `d(u, v) = Ω[u,u] + Ω[v,v] - 2Ω[u,v]`, a metric that stays finite
//! on disconnected graphs. Forest farness `f(v)` sums the distances from `v`
//! and forest closeness is `n / f(v)`.
//!
//! The crate offers
//!
//! - [`oracle`]: exact dense computations for small graphs,
//! - [`approx`]: a nearly-linear estimator that samples uniform spanning
//!   trees of the [augmented graph](graph::AugmentedGraph) ([`ust`]) and
//!   solves one Laplacian system ([`solver`]),
//! - [`group`]: greedy selection of a vertex group of maximum group forest
//!   closeness,
//! - [`jlt`]: the random-projection baseline,
//! - [`eval`]: metrics, generators, result files and the `fcc` CLI.
//!
//! ```
//! use forest_closeness::approx::{approx_diag_forest_matrix, ApproxConfig};
//! use forest_closeness::graph::Graph;
//!
//! let g = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])?;
//! let cfg = ApproxConfig { eps: 0.2, seed: 1, ..ApproxConfig::default() };
//! let result = approx_diag_forest_matrix(&g, &cfg)?;
//! assert_eq!(result.diag.len(), 3);
//! # Ok::<(), forest_closeness::Error>(())
//! ```

pub mod approx;
pub mod error;
pub mod eval;
pub mod graph;
pub mod group;
pub mod jlt;
pub mod oracle;
pub mod solver;
pub mod ust;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/forest-distance.md")]
    mod forest_distance {}
    #[doc = include_str!("../../../book/src/augmented-graph.md")]
    mod augmented_graph {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/approximation.md")]
    mod approximation {}
    #[doc = include_str!("../../../book/src/group.md")]
    mod group {}
    #[doc = include_str!("../../../book/src/projection.md")]
    mod projection {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
