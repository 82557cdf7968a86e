//! Greedy maximization of group forest closeness.
//!
//! The group farness of `S` is `f(S) = tr((L*_{-S})^{-1})`, the trace of the
//! inverse of the augmented Laplacian with the rows and columns of `S`
//! removed. `f` is non-increasing and supermodular, so adding the vertex of
//! largest marginal gain each round carries the usual greedy guarantee.
//!
//! Only one dense inverse is ever factorized. With `M = (L*_{-S})^{-1}`, the
//! gain of adding `v` is `||M e_v||^2 / M[v,v]`, and the inverse for
//! `S ∪ {v}` is the Schur-complement update `M - M e_v e_v^T M / M[v,v]`
//! restricted to the remaining indices.

use std::time::Instant;

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{augment, AugmentedGraph, Graph};
use crate::oracle::{check_group, Oracle};

/// Symmetry defect of the maintained inverse that triggers a refactorization.
pub const REFRESH_THRESHOLD: f64 = 1e-6;

/// Outcome of the greedy selection.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupResult {
    /// Vertices in the order they were chosen.
    pub selected: Vec<usize>,
    /// Farness decrease of each addition after the first vertex (`k - 1` entries).
    pub gains: Vec<f64>,
    /// Group farness after each addition (`k` entries).
    pub farness_trajectory: Vec<f64>,
    pub final_farness: f64,
    pub final_closeness: f64,
    /// Times the maintained inverse was recomputed from scratch.
    pub refreshes: usize,
    pub wall_time_secs: f64,
}

/// Incremental greedy state. Rows and columns of chosen vertices are zeroed
/// and masked out rather than physically removed.
pub struct GreedySelector {
    ag: AugmentedGraph,
    oracle: Oracle,
    inverse: DMatrix<f64>,
    active: Vec<bool>,
    selected: Vec<usize>,
    gains: Vec<f64>,
    trajectory: Vec<f64>,
    refreshes: usize,
}

fn better(candidate: f64, best: f64) -> bool {
    candidate > best + 1e-12 * best.abs()
}

impl GreedySelector {
    /// Picks the first vertex (smallest diagonal entry of the augmented
    /// pseudoinverse, which minimizes `f({v})`) and factorizes once.
    pub fn new(g: &Graph, alpha: f64, oracle: Oracle) -> Result<Self> {
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::Domain("graph has no vertices".into()));
        }
        let ag = augment(g, alpha)?;
        let pinv = oracle.pseudo_inverse_lstar(&ag)?;
        let mut first = 0;
        for v in 1..n {
            if better(-pinv[(v, v)], -pinv[(first, first)]) {
                first = v;
            }
        }
        let total = ag.vertex_count();
        let mut selector = Self {
            ag,
            oracle,
            inverse: DMatrix::zeros(total, total),
            active: vec![true; total],
            selected: vec![first],
            gains: Vec::new(),
            trajectory: Vec::new(),
            refreshes: 0,
        };
        selector.active[first] = false;
        selector.refactorize()?;
        selector.trajectory.push(selector.current_farness());
        Ok(selector)
    }

    fn refactorize(&mut self) -> Result<()> {
        let (kept, inv) = self.oracle.grounded_inverse(&self.ag, &self.selected)?;
        self.inverse.fill(0.0);
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate() {
                self.inverse[(i, j)] = inv[(a, b)];
            }
        }
        Ok(())
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn augmented(&self) -> &AugmentedGraph {
        &self.ag
    }

    /// Trace of the maintained inverse.
    pub fn current_farness(&self) -> f64 {
        (0..self.active.len())
            .filter(|&i| self.active[i])
            .map(|i| self.inverse[(i, i)])
            .sum()
    }

    /// Indices still present and the maintained inverse restricted to them.
    pub fn maintained_inverse(&self) -> (Vec<usize>, DMatrix<f64>) {
        let kept: Vec<usize> = (0..self.active.len()).filter(|&i| self.active[i]).collect();
        let sub = self.inverse.select_rows(&kept).select_columns(&kept);
        (kept, sub)
    }

    fn kept(&self) -> Vec<usize> {
        (0..self.active.len()).filter(|&i| self.active[i]).collect()
    }

    /// Adds the vertex with the largest marginal gain; `None` once every
    /// original vertex is selected.
    pub fn step(&mut self) -> Option<(usize, f64)> {
        let star = self.ag.universal_vertex();
        let kept = self.kept();
        let candidates: Vec<usize> = kept.iter().copied().filter(|&v| v != star).collect();
        if candidates.is_empty() {
            return None;
        }
        let inverse = &self.inverse;
        let gains: Vec<f64> = candidates
            .par_iter()
            .map(|&v| {
                let column = inverse.column(v);
                let norm2: f64 = kept.iter().map(|&i| column[i] * column[i]).sum();
                norm2 / column[v]
            })
            .collect();
        let mut best = 0;
        for i in 1..candidates.len() {
            if better(gains[i], gains[best]) {
                best = i;
            }
        }
        let (v, gain) = (candidates[best], gains[best]);

        let column: Vec<f64> = self.inverse.column(v).iter().copied().collect();
        let pivot = column[v];
        for &j in &kept {
            let cj = column[j] / pivot;
            if cj == 0.0 {
                continue;
            }
            for &i in &kept {
                self.inverse[(i, j)] -= column[i] * cj;
            }
        }
        self.active[v] = false;
        for i in 0..self.active.len() {
            self.inverse[(i, v)] = 0.0;
            self.inverse[(v, i)] = 0.0;
        }
        self.selected.push(v);
        self.gains.push(gain);

        if self.symmetry_defect() > REFRESH_THRESHOLD && self.refactorize().is_ok() {
            self.refreshes += 1;
        }
        self.trajectory.push(self.current_farness());
        Some((v, gain))
    }

    fn symmetry_defect(&self) -> f64 {
        let kept = self.kept();
        let mut defect = 0.0f64;
        for (a, &i) in kept.iter().enumerate() {
            for &j in &kept[a + 1..] {
                defect = defect.max((self.inverse[(i, j)] - self.inverse[(j, i)]).abs());
            }
        }
        defect
    }

    pub fn finish(self, started: Instant) -> GroupResult {
        let final_farness = *self.trajectory.last().expect("first vertex recorded");
        GroupResult {
            selected: self.selected,
            gains: self.gains,
            farness_trajectory: self.trajectory,
            final_farness,
            final_closeness: 1.0 / final_farness,
            refreshes: self.refreshes,
            wall_time_secs: started.elapsed().as_secs_f64(),
        }
    }
}

/// Greedily selects `k` vertices of maximum group forest closeness.
pub fn greedy_group(g: &Graph, alpha: f64, k: usize) -> Result<GroupResult> {
    greedy_group_with(g, alpha, k, Oracle::default())
}

/// [`greedy_group`] with an explicit dense-size limit.
pub fn greedy_group_with(g: &Graph, alpha: f64, k: usize, oracle: Oracle) -> Result<GroupResult> {
    let n = g.vertex_count();
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("group size {k} not in 1..={n}")));
    }
    let started = Instant::now();
    let mut selector = GreedySelector::new(g, alpha, oracle)?;
    while selector.selected().len() < k {
        selector.step().expect("fewer than n vertices selected");
    }
    Ok(selector.finish(started))
}

/// `f(S) - f(S ∪ {v})` from two fresh dense inverses.
pub fn marginal_gain_exact(oracle: &Oracle, ag: &AugmentedGraph, group: &[usize], v: usize) -> Result<f64> {
    check_group(ag, group)?;
    if group.contains(&v) {
        return Err(Error::Domain(format!("vertex {v} already in the group")));
    }
    let mut bigger = group.to_vec();
    bigger.push(v);
    check_group(ag, &bigger)?;
    Ok(oracle.group_farness_exact(ag, group)? - oracle.group_farness_exact(ag, &bigger)?)
}

/// `||M e_v||^2 / M[v,v]` for a fresh `M = (L*_{-S})^{-1}`.
pub fn marginal_gain_blockwise(oracle: &Oracle, ag: &AugmentedGraph, group: &[usize], v: usize) -> Result<f64> {
    if group.contains(&v) {
        return Err(Error::Domain(format!("vertex {v} already in the group")));
    }
    let (kept, inv) = oracle.grounded_inverse(ag, group)?;
    let pos = kept
        .iter()
        .position(|&i| i == v)
        .ok_or_else(|| Error::Domain(format!("vertex {v} out of range")))?;
    let column = inv.column(pos);
    Ok(column.norm_squared() / column[pos])
}
