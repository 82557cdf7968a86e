//! Time/accuracy sweeps of the sampling and projection estimators against the
//! exact diagonal.

use std::io::Write;

use crate::approx::{approx_diag_forest_matrix, ApproxConfig, DiagResult};
use crate::error::Result;
use crate::eval::metrics::{avg_abs_error, kendall_tau, max_abs_error};
use crate::graph::Graph;
use crate::jlt::{jlt_diag, JltConfig};
use crate::oracle::Oracle;

/// Systems solved to measure the per-solve cost of the projection baseline.
pub const CALIBRATION_SYSTEMS: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchMethod {
    Ust,
    Jlt,
    /// Projection baseline given the wall time of the sampling run in the same cell.
    JltMatched,
}

impl BenchMethod {
    pub fn name(self) -> &'static str {
        match self {
            BenchMethod::Ust => "ust",
            BenchMethod::Jlt => "jlt",
            BenchMethod::JltMatched => "jlt-matched",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: BenchMethod,
    pub eps: f64,
    pub seed: u64,
    pub samples: u64,
    pub wall_time_secs: f64,
    pub max_abs_error: f64,
    pub avg_abs_error: f64,
    pub kendall_tau: f64,
}

pub const BENCH_HEADER: &str = "method\teps\tseed\tsamples\twall_time_secs\tmax_abs_error\tavg_abs_error\tkendall_tau";

/// Exact diagonal and closeness for scoring benchmark runs.
pub struct Reference {
    pub diag: Vec<f64>,
    pub closeness: Vec<f64>,
}

impl Reference {
    pub fn exact(g: &Graph, alpha: f64, oracle: &Oracle) -> Result<Self> {
        let diag = oracle.forest_diagonal(g, alpha)?;
        let (_, _, closeness) = crate::approx::farness_from_diag(&diag);
        Ok(Self { diag, closeness })
    }

    pub fn score(&self, method: BenchMethod, eps: f64, seed: u64, run: &DiagResult) -> Result<BenchRow> {
        Ok(BenchRow {
            method,
            eps,
            seed,
            samples: run.samples,
            wall_time_secs: run.wall_time_secs,
            max_abs_error: max_abs_error(&run.diag, &self.diag)?,
            avg_abs_error: avg_abs_error(&run.diag, &self.diag)?,
            kendall_tau: kendall_tau(&run.closeness, &self.closeness).unwrap_or(f64::NAN),
        })
    }
}

/// Runs the projection baseline with as many systems as fit in `budget_secs`,
/// judged by the measured cost of a short calibration run.
pub fn matched_jlt(g: &Graph, alpha: f64, budget_secs: f64, seed: u64, workers: usize) -> Result<DiagResult> {
    let calibration = JltConfig {
        seed: seed ^ 0x9e37_79b9_7f4a_7c15,
        workers,
        q_override: Some(CALIBRATION_SYSTEMS),
        ..JltConfig::default()
    };
    let probe = jlt_diag(g, alpha, &calibration)?;
    let per_system = probe.wall_time_secs / CALIBRATION_SYSTEMS as f64;
    let q = ((budget_secs / per_system).floor() as u64).max(1);
    let cfg = JltConfig {
        seed,
        workers,
        q_override: Some(q),
        ..JltConfig::default()
    };
    jlt_diag(g, alpha, &cfg)
}

/// One row per `(method, eps, seed)`. `JltMatched` reuses the wall time of
/// the sampling run with the same `eps` and seed, running it if `Ust` is not
/// among `methods`.
pub fn run_bench(
    g: &Graph,
    alpha: f64,
    methods: &[BenchMethod],
    eps_grid: &[f64],
    seeds: &[u64],
    workers: usize,
    reference: &Reference,
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &eps in eps_grid {
        for &seed in seeds {
            let mut ust_time = None;
            for &method in methods {
                let run = match method {
                    BenchMethod::Ust => {
                        let run = run_ust(g, alpha, eps, seed, workers)?;
                        ust_time = Some(run.wall_time_secs);
                        run
                    }
                    BenchMethod::Jlt => {
                        let cfg = JltConfig {
                            eps,
                            seed,
                            workers,
                            ..JltConfig::default()
                        };
                        jlt_diag(g, alpha, &cfg)?
                    }
                    BenchMethod::JltMatched => {
                        let budget = match ust_time {
                            Some(t) => t,
                            None => run_ust(g, alpha, eps, seed, workers)?.wall_time_secs,
                        };
                        matched_jlt(g, alpha, budget, seed, workers)?
                    }
                };
                rows.push(reference.score(method, eps, seed, &run)?);
            }
        }
    }
    Ok(rows)
}

fn run_ust(g: &Graph, alpha: f64, eps: f64, seed: u64, workers: usize) -> Result<DiagResult> {
    let cfg = ApproxConfig {
        alpha,
        eps,
        seed,
        workers,
        ..ApproxConfig::default()
    };
    approx_diag_forest_matrix(g, &cfg)
}

pub fn write_bench_table<W: Write>(rows: &[BenchRow], mut out: W) -> Result<()> {
    writeln!(out, "{BENCH_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.method.name(),
            r.eps,
            r.seed,
            r.samples,
            r.wall_time_secs,
            r.max_abs_error,
            r.avg_abs_error,
            r.kendall_tau
        )?;
    }
    Ok(())
}
