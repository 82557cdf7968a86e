//! Preconditioned conjugate gradient for the singular Laplacian system of the
//! augmented graph.
//!
//! The augmented Laplacian has the constant vector as its one-dimensional
//! null space. The right-hand side is projected onto its orthogonal
//! complement, and the preconditioned residual and the iterate are
//! re-centred every step, so the iteration stays in the range of the matrix
//! and returns the minimum-norm (zero-mean) solution.

use crate::error::{Error, Result};
use crate::graph::{AugmentedGraph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preconditioner {
    None,
    /// Inverse diagonal (weighted degrees).
    Jacobi,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Target relative residual `||b - Lx|| / ||b||`.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub preconditioner: Preconditioner,
}

impl SolverConfig {
    pub fn new(tolerance: f64, max_iterations: usize) -> Result<Self> {
        if tolerance.is_nan() || tolerance <= 0.0 {
            return Err(Error::Parameter(format!(
                "solver tolerance must be positive, got {tolerance}"
            )));
        }
        if max_iterations == 0 {
            return Err(Error::Parameter("max iterations must be at least 1".into()));
        }
        Ok(Self {
            tolerance,
            max_iterations,
            preconditioner: Preconditioner::Jacobi,
        })
    }

    /// Jacobi-preconditioned config with the default iteration cap
    /// `10 sqrt(n) + 100` for a system of dimension `n`.
    pub fn for_dimension(n: usize, tolerance: f64) -> Result<Self> {
        Self::new(tolerance, default_max_iterations(n))
    }

    pub fn with_preconditioner(mut self, preconditioner: Preconditioner) -> Self {
        self.preconditioner = preconditioner;
        self
    }
}

pub fn default_max_iterations(n: usize) -> usize {
    (10.0 * (n as f64).sqrt()).ceil() as usize + 100
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    /// Relative residual of the returned solution.
    pub residual: f64,
    pub iterations: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn center(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

/// Solves `L x = b` for the augmented Laplacian `L`.
///
/// `b` is projected onto the range of `L` first. The returned solution has
/// zero mean.
pub fn solve_laplacian(ag: &AugmentedGraph, rhs: &[f64], cfg: &SolverConfig) -> Result<SolveReport> {
    let n = ag.vertex_count();
    if rhs.len() != n {
        return Err(Error::Mismatch(format!(
            "right-hand side has length {}, system has {n}",
            rhs.len()
        )));
    }
    let mut b = rhs.to_vec();
    center(&mut b);
    let b_norm = norm(&b);
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(SolveReport {
            solution: x,
            residual: 0.0,
            iterations: 0,
        });
    }

    let inv_diag: Vec<f64> = match cfg.preconditioner {
        Preconditioner::Jacobi => (0..n).map(|v| 1.0 / ag.weighted_degree(v)).collect(),
        Preconditioner::None => vec![1.0; n],
    };
    let precondition = |r: &[f64], z: &mut [f64]| {
        for i in 0..n {
            z[i] = inv_diag[i] * r[i];
        }
        center(z);
    };

    let mut r = b.clone();
    let mut z = vec![0.0; n];
    let mut ap = vec![0.0; n];
    precondition(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut residual = 1.0;

    for iteration in 1..=cfg.max_iterations {
        ag.laplacian_apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            break;
        }
        let step = rz / pap;
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        center(&mut x);
        residual = norm(&r) / b_norm;
        if residual <= cfg.tolerance {
            // Confirm against the true residual; restart from it if the
            // recursive one drifted.
            ag.laplacian_apply(&x, &mut ap);
            for i in 0..n {
                r[i] = b[i] - ap[i];
            }
            residual = norm(&r) / b_norm;
            if residual <= cfg.tolerance {
                return Ok(SolveReport {
                    solution: x,
                    residual,
                    iterations: iteration,
                });
            }
            precondition(&r, &mut z);
            p.copy_from_slice(&z);
            rz = dot(&r, &z);
            continue;
        }
        precondition(&r, &mut z);
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::Solver {
        residual,
        iterations: cfg.max_iterations,
        target: cfg.tolerance,
    })
}

/// Solves `L x = e_u* - 1/(n+1)`, whose solution is the universal-vertex
/// column of the pseudoinverse of the augmented Laplacian.
pub fn solve_pivot_column(ag: &AugmentedGraph, cfg: &SolverConfig) -> Result<SolveReport> {
    let total = ag.vertex_count();
    let mut rhs = vec![-1.0 / total as f64; total];
    rhs[ag.universal_vertex()] += 1.0;
    solve_laplacian(ag, &rhs, cfg)
}

/// Solver accuracy `κ ε / (6 sqrt(α (c + 2) vol(G)))` with
/// `c = n / (α vol(G))`.
///
/// An edgeless graph has volume zero; `n` is used as the volume instead.
pub fn compute_eta(alpha: f64, eps: f64, kappa: f64, g: &Graph) -> Result<f64> {
    crate::graph::check_alpha(alpha)?;
    check_unit_interval("eps", eps)?;
    check_unit_interval("kappa", kappa)?;
    let n = g.vertex_count() as f64;
    if n == 0.0 {
        return Err(Error::Domain("graph has no vertices".into()));
    }
    let vol = match g.volume() {
        v if v > 0.0 => v,
        _ => n,
    };
    let c = n / (alpha * vol);
    Ok(kappa * eps / (6.0 * (alpha * (c + 2.0) * vol).sqrt()))
}

pub(crate) fn check_unit_interval(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must lie in (0, 1), got {value}")))
    }
}
