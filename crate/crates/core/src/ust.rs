//! Uniform spanning tree sampling on the augmented graph (Wilson's algorithm
//! rooted at the universal vertex) and the edge-frequency estimator of the
//! effective resistances between the universal vertex and every other vertex.
//!
//! By Kirchhoff's theorem a unit-weight edge `{u*, v}` lies in a random
//! weight-proportional spanning tree with probability `r(u*, v)`, so the
//! fraction of sampled trees containing it is an unbiased estimate.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::AugmentedGraph;

/// Reproducible random stream: a master seed and a stream index.
///
/// Distinct indices under one seed select disjoint ChaCha streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub index: u64,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        Self { seed, index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        rng
    }
}

/// Per-vertex counts of sampled trees that contain the edge to the universal
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleAccumulator {
    pub counts: Vec<u64>,
    /// Trees sampled so far.
    pub tau: u64,
    /// Random-walk steps taken over all samples.
    pub steps: u64,
}

impl SampleAccumulator {
    /// Empty accumulator for `n` original vertices.
    pub fn new(n: usize) -> Self {
        Self {
            counts: vec![0; n],
            tau: 0,
            steps: 0,
        }
    }

    pub fn merge(mut self, other: SampleAccumulator) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.tau += other.tau;
        self.steps += other.steps;
        self
    }
}

/// Reusable Wilson sampler state for one augmented graph.
pub struct UstSampler<'a> {
    ag: &'a AugmentedGraph,
    order: Vec<usize>,
    in_tree: Vec<bool>,
    next: Vec<usize>,
}

impl<'a> UstSampler<'a> {
    pub fn new(ag: &'a AugmentedGraph) -> Self {
        Self::with_order(ag, ag.base().ascending_degree_order())
    }

    fn with_order(ag: &'a AugmentedGraph, order: Vec<usize>) -> Self {
        let total = ag.vertex_count();
        Self {
            ag,
            order,
            in_tree: vec![false; total],
            next: vec![0; total],
        }
    }

    /// Picks a neighbor of original vertex `v` with probability proportional
    /// to the edge weight.
    #[inline]
    fn step<R: Rng>(&self, v: usize, rng: &mut R) -> usize {
        let (targets, cumulative) = self.ag.base().adjacency(v);
        let base_total = cumulative.last().copied().unwrap_or(0.0);
        let r = rng.random::<f64>() * (base_total + 1.0);
        if r >= base_total {
            return self.ag.universal_vertex();
        }
        let idx = cumulative.partition_point(|&c| c <= r);
        targets[idx.min(targets.len() - 1)]
    }

    /// Draws one spanning tree and records its edges to the universal vertex.
    ///
    /// Each vertex, in ascending-degree order, starts a random walk that runs
    /// until it hits the current tree. `next[v]` holds the last exit taken
    /// from `v`, so following it from the start vertex traces the walk's loop
    /// erasure, which is then grafted onto the tree.
    pub fn sample<R: Rng>(&mut self, rng: &mut R, acc: &mut SampleAccumulator) {
        let star = self.ag.universal_vertex();
        self.in_tree.fill(false);
        self.in_tree[star] = true;
        let mut steps = 0u64;
        for i in 0..self.order.len() {
            let start = self.order[i];
            let mut u = start;
            while !self.in_tree[u] {
                let next = self.step(u, rng);
                self.next[u] = next;
                u = next;
                steps += 1;
            }
            u = start;
            while !self.in_tree[u] {
                self.in_tree[u] = true;
                let next = self.next[u];
                if next == star {
                    acc.counts[u] += 1;
                }
                u = next;
            }
        }
        acc.tau += 1;
        acc.steps += steps;
    }
}

/// Samples one spanning tree from `stream` into `acc`.
pub fn sample_ust_once(ag: &AugmentedGraph, stream: RngStream, acc: &mut SampleAccumulator) {
    let mut rng = stream.rng();
    UstSampler::new(ag).sample(&mut rng, acc);
}

/// Runs `f` on a pool of `workers` threads; zero selects rayon's default.
pub(crate) fn with_workers<T, F>(workers: usize, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Samples `tau` trees; tree `i` uses `RngStream::new(seed, i)`, so the result
/// does not depend on `workers`.
pub fn sample_usts(ag: &AugmentedGraph, tau: u64, seed: u64, workers: usize) -> Result<SampleAccumulator> {
    if tau == 0 {
        return Err(Error::Parameter("tau must be at least 1".into()));
    }
    let n = ag.base().vertex_count();
    let order = ag.base().ascending_degree_order();
    with_workers(workers, || {
        (0..tau)
            .into_par_iter()
            .fold(
                || (UstSampler::with_order(ag, order.clone()), SampleAccumulator::new(n)),
                |(mut sampler, mut acc), i| {
                    let mut rng = RngStream::new(seed, i).rng();
                    sampler.sample(&mut rng, &mut acc);
                    (sampler, acc)
                },
            )
            .map(|(_, acc)| acc)
            .reduce(|| SampleAccumulator::new(n), SampleAccumulator::merge)
    })
}

/// `counts[v] / tau` for every original vertex.
pub fn estimate_resistances(acc: &SampleAccumulator) -> Result<Vec<f64>> {
    if acc.tau == 0 {
        return Err(Error::Domain("no trees sampled".into()));
    }
    let tau = acc.tau as f64;
    Ok(acc.counts.iter().map(|&c| c as f64 / tau).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::generate::{generate, Model};
    use crate::graph::{augment, Graph};
    use crate::oracle::Oracle;

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn star_has_a_single_tree() {
        let ag = augment(&Graph::empty(2), 1.0).unwrap();
        let mut acc = SampleAccumulator::new(2);
        sample_ust_once(&ag, RngStream::new(1, 0), &mut acc);
        assert_eq!(acc.counts, vec![1, 1]);
        assert_eq!(acc.tau, 1);

        let acc = sample_usts(&ag, 100, 7, 1).unwrap();
        assert_eq!(acc.counts, vec![100, 100]);
        assert_eq!(estimate_resistances(&acc).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn every_tree_touches_the_universal_vertex() {
        let g = generate(&Model::ErdosRenyi { n: 30, p: 0.1 }, 3).unwrap();
        let ag = augment(&g, 1.0).unwrap();
        let mut sampler = UstSampler::new(&ag);
        for i in 0..50 {
            let mut acc = SampleAccumulator::new(30);
            sampler.sample(&mut RngStream::new(5, i).rng(), &mut acc);
            // A spanning tree on n + 1 vertices with star edges counted once each.
            let hub_edges: u64 = acc.counts.iter().sum();
            assert!(hub_edges >= g.component_count() as u64);
            assert!(acc.counts.iter().all(|&c| c <= 1));
        }
    }

    #[test]
    fn triangle_edge_frequency() {
        // 3 spanning trees of the triangle, 2 contain {u*, u}.
        let ag = augment(&k2(), 1.0).unwrap();
        let acc = sample_usts(&ag, 100_000, 11, 1).unwrap();
        for r in estimate_resistances(&acc).unwrap() {
            assert!((r - 2.0 / 3.0).abs() <= 0.01, "{r}");
        }
    }

    #[test]
    fn complete_graph_on_four_vertices() {
        // K3 augmented is K4: each edge lies in 8 of the 16 spanning trees.
        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let ag = augment(&k3, 1.0).unwrap();
        let acc = sample_usts(&ag, 100_000, 2, 1).unwrap();
        for r in estimate_resistances(&acc).unwrap() {
            assert!((r - 0.5).abs() <= 0.01, "{r}");
        }
    }

    #[test]
    fn path_frequencies_match_forest_diagonal() {
        let p3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let ag = augment(&p3, 1.0).unwrap();
        let exact = Oracle::default().forest_diagonal(&p3, 1.0).unwrap();
        let acc = sample_usts(&ag, 100_000, 4, 1).unwrap();
        for (r, d) in estimate_resistances(&acc).unwrap().iter().zip(exact) {
            assert!((r - d).abs() <= 0.01, "{r} vs {d}");
        }
    }

    #[test]
    fn weighted_frequencies_match_forest_diagonal() {
        let g = Graph::from_edges(4, [(0, 1, 3.0), (1, 2, 0.25), (2, 3, 1.5), (0, 3, 2.0)]).unwrap();
        let ag = augment(&g, 0.8).unwrap();
        let exact = Oracle::default().forest_diagonal(&g, 0.8).unwrap();
        let acc = sample_usts(&ag, 100_000, 9, 1).unwrap();
        for (r, d) in estimate_resistances(&acc).unwrap().iter().zip(exact) {
            assert!((r - d).abs() <= 0.01, "{r} vs {d}");
        }
    }

    #[test]
    fn worker_count_does_not_change_the_sample() {
        let g = generate(&Model::ErdosRenyi { n: 60, p: 0.08 }, 1).unwrap();
        let ag = augment(&g, 1.0).unwrap();
        let one = sample_usts(&ag, 500, 42, 1).unwrap();
        let eight = sample_usts(&ag, 500, 42, 8).unwrap();
        assert_eq!(one, eight);
    }

    #[test]
    fn unbiased_over_batches() {
        for (graph_seed, alpha) in [(1u64, 1.0), (2, 0.5), (3, 2.0)] {
            let n = 12 + graph_seed as usize * 2;
            let g = generate(&Model::ErdosRenyi { n, p: 0.2 }, graph_seed).unwrap();
            let ag = augment(&g, alpha).unwrap();
            let exact = Oracle::default().forest_diagonal(&g, alpha).unwrap();
            let batches = 200;
            let mut estimates = vec![Vec::with_capacity(batches); n];
            for b in 0..batches {
                let acc = sample_usts(&ag, 1000, 1000 * graph_seed + b as u64, 1).unwrap();
                for (v, r) in estimate_resistances(&acc).unwrap().into_iter().enumerate() {
                    estimates[v].push(r);
                }
            }
            for v in 0..n {
                let xs = &estimates[v];
                let mean = xs.iter().sum::<f64>() / batches as f64;
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (batches - 1) as f64;
                let se = (var / batches as f64).sqrt().max(1e-12);
                assert!(
                    (mean - exact[v]).abs() <= 4.0 * se,
                    "vertex {v}: mean {mean}, exact {}, se {se}",
                    exact[v]
                );
            }
        }
    }

    #[test]
    fn walks_stay_within_volume_bound() {
        for (seed, alpha) in [(1u64, 1.0), (2, 4.0), (3, 0.25)] {
            let g = generate(&Model::ErdosRenyi { n: 200, p: 0.03 }, seed).unwrap();
            let ag = augment(&g, alpha).unwrap();
            let acc = sample_usts(&ag, 200, seed, 1).unwrap();
            let mean_steps = acc.steps as f64 / acc.tau as f64;
            let bound = 4.0 * (alpha * g.volume() + g.vertex_count() as f64);
            assert!(mean_steps <= bound, "{mean_steps} > {bound}");
        }
    }

    #[test]
    fn zero_tau_is_rejected() {
        let ag = augment(&k2(), 1.0).unwrap();
        assert!(sample_usts(&ag, 0, 1, 1).is_err());
        assert!(estimate_resistances(&SampleAccumulator::new(2)).is_err());
    }
}
