//! Random-projection baseline for the forest matrix diagonal.
//!
//! The effective resistance `r(u*, v)` is the squared length of
//! `W^{1/2} B L^+ (e_u* - e_v)`, with `B` the edge-vertex incidence matrix of
//! the augmented graph. Projecting that vector onto `q` random ±1 directions
//! preserves its length in expectation, and each projected row costs one
//! Laplacian solve: `L z_i = B^T W^{1/2} s_i`.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::approx::{DiagResult, Method, RunParams};
use crate::error::{Error, Result};
use crate::graph::{augment, Graph};
use crate::solver::{check_unit_interval, default_max_iterations, solve_laplacian, SolverConfig};
use crate::ust::{with_workers, RngStream};

/// Projections solved together before their contributions are summed in
/// index order.
const BLOCK: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub struct JltConfig {
    pub eps: f64,
    pub seed: u64,
    /// Worker threads; 0 uses all available cores.
    pub workers: usize,
    /// Relative residual for each Laplacian solve.
    pub solver_tolerance: f64,
    /// Solve this many systems instead of `⌈ln n / ε²⌉`.
    pub q_override: Option<u64>,
}

impl Default for JltConfig {
    fn default() -> Self {
        Self {
            eps: 0.1,
            seed: 0,
            workers: 0,
            solver_tolerance: 1e-6,
            q_override: None,
        }
    }
}

/// Number of projected systems `⌈ln n / ε²⌉`.
pub fn projection_count(n: usize, eps: f64) -> Result<u64> {
    check_unit_interval("eps", eps)?;
    Ok((((n as f64).ln() / (eps * eps)).ceil() as u64).max(1))
}

/// Estimates the forest matrix diagonal of `g` from `q` sketched solves.
pub fn jlt_diag(g: &Graph, alpha: f64, cfg: &JltConfig) -> Result<DiagResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Domain("random projection needs at least two vertices".into()));
    }
    let q = match cfg.q_override {
        Some(0) => return Err(Error::Parameter("projection count must be at least 1".into())),
        Some(q) => q,
        None => projection_count(n, cfg.eps)?,
    };
    let ag = augment(g, alpha)?;
    let total = ag.vertex_count();
    let star = ag.universal_vertex();
    let solver = SolverConfig::new(cfg.solver_tolerance, default_max_iterations(total))?;
    let edges: Vec<(usize, usize, f64)> = ag.edges().map(|(u, v, w)| (u, v, w.sqrt())).collect();

    let project = |i: u64| -> Result<(Vec<f64>, f64, usize)> {
        let mut rng = RngStream::new(cfg.seed, i).rng();
        let mut rhs = vec![0.0; total];
        for &(u, v, s) in &edges {
            let signed = if rng.random::<bool>() { s } else { -s };
            rhs[u] += signed;
            rhs[v] -= signed;
        }
        let report = solve_laplacian(&ag, &rhs, &solver)?;
        let z = &report.solution;
        let contribution = (0..n).map(|v| (z[star] - z[v]).powi(2)).collect();
        Ok((contribution, report.residual, report.iterations))
    };

    let (sums, residual, iterations) = with_workers(cfg.workers, || -> Result<_> {
        let mut sums = vec![0.0; n];
        let mut residual = 0.0f64;
        let mut iterations = 0;
        let mut next = 0u64;
        while next < q {
            let end = (next + BLOCK as u64).min(q);
            let block: Vec<_> = (next..end).into_par_iter().map(project).collect::<Result<_>>()?;
            for (contribution, res, iters) in block {
                for (s, c) in sums.iter_mut().zip(contribution) {
                    *s += c;
                }
                residual = residual.max(res);
                iterations += iters;
            }
            next = end;
        }
        Ok((sums, residual, iterations))
    })??;

    let diag = sums.iter().map(|s| (s / q as f64).clamp(0.0, 1.0)).collect();
    let params = RunParams {
        alpha,
        eps: Some(cfg.eps),
        seed: Some(cfg.seed),
        solver_tolerance: Some(cfg.solver_tolerance),
        samples_override: cfg.q_override,
        ..RunParams::default()
    };
    let mut result = DiagResult::from_diag(Method::Jlt, diag, params);
    result.samples = q;
    result.solver_residual = Some(residual);
    result.solver_iterations = iterations;
    result.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(result)
}
