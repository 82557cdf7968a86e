//! Exact reference values by dense linear algebra.
//!
//! Everything here is cubic in the vertex count and guarded by
//! [`Oracle::limit`]. These routines are the ground truth the sampled and
//! sketched estimators are checked against.

use itertools::Itertools;
use nalgebra::{Cholesky, DMatrix};

use crate::error::{Error, Result};
use crate::graph::{check_alpha, AugmentedGraph, Graph};

pub type DenseMatrix = DMatrix<f64>;

/// Default largest vertex count the oracle accepts.
pub const DEFAULT_LIMIT: usize = 5000;

/// Largest vertex count for exhaustive group search.
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Dense exact computations, guarded by a vertex-count limit.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self {
            limit: DEFAULT_LIMIT,
        }
    }
}

/// Dense Laplacian `D - A` of `g`.
pub fn laplacian(g: &Graph) -> DenseMatrix {
    let n = g.vertex_count();
    let mut l = DenseMatrix::zeros(n, n);
    for (u, v, w) in g.edges() {
        l[(u, v)] -= w;
        l[(v, u)] -= w;
        l[(u, u)] += w;
        l[(v, v)] += w;
    }
    l
}

/// Dense Laplacian of the augmented graph; the universal vertex is the last index.
pub fn augmented_laplacian(ag: &AugmentedGraph) -> DenseMatrix {
    let n = ag.vertex_count();
    let mut l = DenseMatrix::zeros(n, n);
    for (u, v, w) in ag.edges() {
        l[(u, v)] -= w;
        l[(v, u)] -= w;
        l[(u, u)] += w;
        l[(v, v)] += w;
    }
    l
}

/// `Ω[u,u] + Ω[v,v] - 2 Ω[u,v]`, zero for `u == v`.
pub fn forest_distance_in(omega: &DenseMatrix, u: usize, v: usize) -> f64 {
    if u == v {
        0.0
    } else {
        omega[(u, u)] + omega[(v, v)] - 2.0 * omega[(u, v)]
    }
}

/// Effective resistance between `u` and `v` read off a Laplacian pseudoinverse.
pub fn effective_resistance(pinv: &DenseMatrix, u: usize, v: usize) -> f64 {
    pinv[(u, u)] + pinv[(v, v)] - 2.0 * pinv[(u, v)]
}

fn spd_inverse(m: DenseMatrix) -> Result<DenseMatrix> {
    Cholesky::new(m)
        .map(|c| c.inverse())
        .ok_or_else(|| Error::Domain("matrix is not positive definite".into()))
}

impl Oracle {
    pub fn with_limit(limit: usize) -> Self {
        Self { limit }
    }

    fn guard(&self, n: usize) -> Result<()> {
        if n > self.limit {
            Err(Error::OracleSize { n, limit: self.limit })
        } else {
            Ok(())
        }
    }

    /// The forest matrix `(αL + I)^{-1}`.
    pub fn forest_matrix(&self, g: &Graph, alpha: f64) -> Result<DenseMatrix> {
        check_alpha(alpha)?;
        let n = g.vertex_count();
        if n == 0 {
            return Err(Error::Domain("graph has no vertices".into()));
        }
        self.guard(n)?;
        let mut m = laplacian(g) * alpha;
        for i in 0..n {
            m[(i, i)] += 1.0;
        }
        spd_inverse(m)
    }

    /// Forest distance between `u` and `v`.
    pub fn forest_distance(&self, g: &Graph, alpha: f64, u: usize, v: usize) -> Result<f64> {
        let n = g.vertex_count();
        if u >= n || v >= n {
            return Err(Error::Parameter(format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Ok(0.0);
        }
        Ok(forest_distance_in(&self.forest_matrix(g, alpha)?, u, v))
    }

    /// Forest farness and closeness of every vertex.
    ///
    /// Farness is the sum of forest distances to all other vertices; it is
    /// cross-checked against `n Ω[v,v] + tr(Ω) - 2` in debug builds. A farness
    /// of zero (only for a single vertex) yields infinite closeness.
    pub fn exact_farness_closeness(&self, g: &Graph, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
        let omega = self.forest_matrix(g, alpha)?;
        let n = g.vertex_count();
        let farness: Vec<f64> = (0..n)
            .map(|v| (0..n).map(|w| forest_distance_in(&omega, v, w)).sum())
            .collect();
        if cfg!(debug_assertions) {
            let by_trace = farness_from_diagonal(&omega);
            for (a, b) in farness.iter().zip(&by_trace) {
                debug_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0), "{a} vs {b}");
            }
        }
        let closeness = farness.iter().map(|&f| closeness_of(n, f)).collect();
        Ok((farness, closeness))
    }

    /// Exact diagonal of the forest matrix.
    pub fn forest_diagonal(&self, g: &Graph, alpha: f64) -> Result<Vec<f64>> {
        let omega = self.forest_matrix(g, alpha)?;
        Ok(omega.diagonal().iter().copied().collect())
    }

    /// Moore–Penrose pseudoinverse of the augmented Laplacian.
    ///
    /// Computed column by column as the solution of
    /// `(L + J/N) x = e_i - 1/N`, which equals `L^+ e_i` for a connected graph
    /// on `N` vertices.
    pub fn pseudo_inverse_lstar(&self, ag: &AugmentedGraph) -> Result<DenseMatrix> {
        let n = ag.vertex_count();
        self.guard(n)?;
        let shift = 1.0 / n as f64;
        let mut m = augmented_laplacian(ag);
        m.add_scalar_mut(shift);
        let chol = Cholesky::new(m)
            .ok_or_else(|| Error::Domain("augmented Laplacian is not connected".into()))?;
        let mut rhs = DenseMatrix::from_element(n, n, -shift);
        for i in 0..n {
            rhs[(i, i)] += 1.0;
        }
        chol.solve_mut(&mut rhs);
        Ok(rhs)
    }

    /// Inverse of the augmented Laplacian with the rows and columns of
    /// `removed` deleted, together with the kept indices (ascending; the
    /// universal vertex is always kept and comes last).
    pub fn grounded_inverse(
        &self,
        ag: &AugmentedGraph,
        removed: &[usize],
    ) -> Result<(Vec<usize>, DenseMatrix)> {
        let n = ag.vertex_count();
        self.guard(n)?;
        check_group(ag, removed)?;
        let mut keep = vec![true; n];
        for &s in removed {
            keep[s] = false;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
        let l = augmented_laplacian(ag);
        let sub = l.select_rows(&kept).select_columns(&kept);
        Ok((kept, spd_inverse(sub)?))
    }

    /// Group forest farness: trace of the inverse of the augmented Laplacian
    /// with the rows and columns of `group` deleted.
    pub fn group_farness_exact(&self, ag: &AugmentedGraph, group: &[usize]) -> Result<f64> {
        let (_, inv) = self.grounded_inverse(ag, group)?;
        Ok(inv.trace())
    }

    /// Exhaustive minimum of group farness over all `k`-subsets.
    ///
    /// Ties go to the lexicographically first subset.
    pub fn brute_force_best_group(&self, ag: &AugmentedGraph, k: usize) -> Result<(Vec<usize>, f64)> {
        let n = ag.base().vertex_count();
        if n > BRUTE_FORCE_LIMIT {
            return Err(Error::OracleSize {
                n,
                limit: BRUTE_FORCE_LIMIT,
            });
        }
        if k == 0 || k > n {
            return Err(Error::Parameter(format!("group size {k} not in 1..={n}")));
        }
        let mut best: Option<(Vec<usize>, f64)> = None;
        for subset in (0..n).combinations(k) {
            let f = self.group_farness_exact(ag, &subset)?;
            let better = match &best {
                None => true,
                Some((_, b)) => f < b - 1e-12 * b.abs(),
            };
            if better {
                best = Some((subset, f));
            }
        }
        Ok(best.expect("at least one subset"))
    }
}

/// Validates a group of original vertices: nonempty, in range, no repeats.
pub(crate) fn check_group(ag: &AugmentedGraph, group: &[usize]) -> Result<()> {
    if group.is_empty() {
        return Err(Error::Domain("group must be nonempty".into()));
    }
    let n = ag.base().vertex_count();
    let mut seen = vec![false; n];
    for &s in group {
        if s >= n {
            return Err(Error::Domain(format!(
                "group member {s} is not an original vertex (n = {n})"
            )));
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::Domain(format!("group member {s} repeated")));
        }
    }
    Ok(())
}

/// `n Ω[v,v] + tr(Ω) - 2` for every vertex.
fn farness_from_diagonal(omega: &DenseMatrix) -> Vec<f64> {
    let n = omega.nrows() as f64;
    let trace = omega.trace();
    omega.diagonal().iter().map(|d| n * d + trace - 2.0).collect()
}

/// `n / farness`, infinite when farness is not positive.
pub fn closeness_of(n: usize, farness: f64) -> f64 {
    if farness > 0.0 {
        n as f64 / farness
    } else {
        f64::INFINITY
    }
}
