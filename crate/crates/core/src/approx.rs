//! Sampling-based approximation of the forest matrix diagonal and the
//! farness/closeness values derived from it.
//!
//! Forest farness only needs the diagonal of `Ω = (αL + I)^{-1}`:
//! `f(v) = n Ω[v,v] + tr(Ω) - 2` because `Ω` is doubly stochastic. The
//! diagonal entry `Ω[v,v]` is the effective resistance between `v` and the
//! universal vertex of the augmented graph, which in turn is the probability
//! that the edge `{u*, v}` belongs to a uniform spanning tree.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{augment, check_alpha, Graph};
use crate::oracle::{closeness_of, Oracle};
use crate::solver::{check_unit_interval, compute_eta, default_max_iterations, solve_pivot_column, SolverConfig};
use crate::ust::{estimate_resistances, sample_usts};

/// Share of the solver accuracy actually requested from conjugate gradient.
///
/// The accuracy bound is stated in the energy norm of `αL + I`; CG here stops
/// on the relative 2-norm residual, so a tenth of it is asked for.
pub const SOLVER_SAFETY: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Ust,
    Jlt,
}

/// How the sampled tree frequencies become diagonal entries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    /// `Ω[v,v] = R[v] / τ`.
    #[default]
    Frequency,
    /// `Ω[v,v] = R[v] / τ - x[u*] + 2 x[v]` with `x` the solved pivot column.
    /// Biased on small graphs.
    #[value(alias = "paper")]
    Corrected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxConfig {
    pub alpha: f64,
    /// Absolute error bound, in (0, 1).
    pub eps: f64,
    /// Failure probability, in (0, 1).
    pub delta: f64,
    /// Share of the error budget given to the solver, in (0, 1).
    pub kappa: f64,
    pub seed: u64,
    /// Worker threads; 0 uses all available cores.
    pub workers: usize,
    pub estimator: Estimator,
    /// Sample this many trees instead of the computed count.
    pub tau_override: Option<u64>,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            eps: 0.1,
            delta: 0.1,
            kappa: 0.5,
            seed: 0,
            workers: 0,
            estimator: Estimator::Frequency,
            tau_override: None,
        }
    }
}

impl ApproxConfig {
    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_unit_interval("eps", self.eps)?;
        check_unit_interval("delta", self.delta)?;
        check_unit_interval("kappa", self.kappa)?;
        if self.tau_override == Some(0) {
            return Err(Error::Parameter("tau override must be at least 1".into()));
        }
        Ok(())
    }
}

/// Parameters echoed into results so a run can be replayed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunParams {
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimator: Option<Estimator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver_tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_override: Option<u64>,
}

impl From<&ApproxConfig> for RunParams {
    fn from(cfg: &ApproxConfig) -> Self {
        Self {
            alpha: cfg.alpha,
            eps: Some(cfg.eps),
            delta: Some(cfg.delta),
            kappa: Some(cfg.kappa),
            seed: Some(cfg.seed),
            estimator: Some(cfg.estimator),
            solver_tolerance: None,
            samples_override: cfg.tau_override,
        }
    }
}

/// Estimated (or exact) forest matrix diagonal with derived centralities.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagResult {
    pub method: Method,
    pub diag: Vec<f64>,
    /// Sum of `diag`, the trace estimate.
    pub trace: f64,
    pub farness: Vec<f64>,
    /// `n / farness`; infinite where farness is not positive.
    pub closeness: Vec<f64>,
    /// Trees sampled (UST) or systems solved (JLT); zero for exact.
    pub samples: u64,
    pub solver_residual: Option<f64>,
    pub solver_iterations: usize,
    /// Solved pivot column of the augmented pseudoinverse, universal vertex last.
    pub pivot_column: Option<Vec<f64>>,
    pub wall_time_secs: f64,
    pub params: RunParams,
}

/// Trace, farness and closeness from a diagonal via `f(v) = n d[v] + tr - 2`.
pub fn farness_from_diag(diag: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let trace: f64 = diag.iter().sum();
    let farness: Vec<f64> = diag.iter().map(|&d| n as f64 * d + trace - 2.0).collect();
    let closeness = farness.iter().map(|&f| closeness_of(n, f)).collect();
    (trace, farness, closeness)
}

impl DiagResult {
    /// Result with farness and closeness derived from `diag`; run metadata zeroed.
    pub fn from_diag(method: Method, diag: Vec<f64>, params: RunParams) -> Self {
        let (trace, farness, closeness) = farness_from_diag(&diag);
        Self {
            method,
            diag,
            trace,
            farness,
            closeness,
            samples: 0,
            solver_residual: None,
            solver_iterations: 0,
            pivot_column: None,
            wall_time_secs: 0.0,
            params,
        }
    }
}

/// Number of sampled trees `⌈ln(2M/δ) / (2 (1-κ)^2 ε^2)⌉`, where `M = m + n`
/// is the edge count of the augmented graph.
pub fn compute_tau(eps: f64, delta: f64, kappa: f64, g: &Graph) -> Result<u64> {
    check_unit_interval("eps", eps)?;
    check_unit_interval("delta", delta)?;
    check_unit_interval("kappa", kappa)?;
    let edges = (g.edge_count() + g.vertex_count()) as f64;
    let sampling_eps = (1.0 - kappa) * eps;
    let tau = ((2.0 * edges / delta).ln() / (2.0 * sampling_eps * sampling_eps)).ceil();
    Ok((tau as u64).max(1))
}

/// Approximates the diagonal of the forest matrix of `g` to absolute error
/// `eps` with probability `1 - delta`.
pub fn approx_diag_forest_matrix(g: &Graph, cfg: &ApproxConfig) -> Result<DiagResult> {
    cfg.validate()?;
    let start = Instant::now();
    let n = g.vertex_count();
    let params = RunParams::from(cfg);
    if n == 0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    if n == 1 {
        let mut result = DiagResult::from_diag(Method::Ust, vec![1.0], params);
        result.wall_time_secs = start.elapsed().as_secs_f64();
        return Ok(result);
    }

    let ag = augment(g, cfg.alpha)?;
    let eta = compute_eta(cfg.alpha, cfg.eps, cfg.kappa, g)?;
    let tau = match cfg.tau_override {
        Some(t) => t,
        None => compute_tau(cfg.eps, cfg.delta, cfg.kappa, g)?,
    };

    let acc = sample_usts(&ag, tau, cfg.seed, cfg.workers)?;
    let frequencies = estimate_resistances(&acc)?;

    let solver_cfg = SolverConfig::new(SOLVER_SAFETY * eta, default_max_iterations(n + 1))?;
    let report = solve_pivot_column(&ag, &solver_cfg)?;
    let x = &report.solution;
    let star = ag.universal_vertex();

    let diag: Vec<f64> = frequencies
        .iter()
        .enumerate()
        .map(|(v, &r)| match cfg.estimator {
            Estimator::Frequency => r,
            Estimator::Corrected => r - x[star] + 2.0 * x[v],
        })
        .map(|d| d.clamp(0.0, 1.0))
        .collect();

    let mut result = DiagResult::from_diag(Method::Ust, diag, params);
    result.params.solver_tolerance = Some(solver_cfg.tolerance);
    result.samples = tau;
    result.solver_residual = Some(report.residual);
    result.solver_iterations = report.iterations;
    result.pivot_column = Some(report.solution);
    result.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Exact diagonal from the dense oracle, packaged like the estimates.
pub fn exact_diag(g: &Graph, alpha: f64, oracle: &Oracle) -> Result<DiagResult> {
    let start = Instant::now();
    let diag = oracle.forest_diagonal(g, alpha)?;
    let params = RunParams {
        alpha,
        ..RunParams::default()
    };
    let mut result = DiagResult::from_diag(Method::Exact, diag, params);
    result.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Vertices by descending closeness, ties by ascending id; at most `top_k`.
pub fn rank_vertices(dr: &DiagResult, top_k: Option<usize>) -> Vec<(usize, f64)> {
    let mut ranked: Vec<(usize, f64)> = dr.closeness.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    if let Some(k) = top_k {
        ranked.truncate(k);
    }
    ranked
}
