//! Undirected weighted graphs in compressed adjacency form, edge-list I/O and
//! the augmented graph with a universal vertex.
//!
//! The adjacency of vertex `v` lives in `offsets[v]..offsets[v + 1]` of three
//! parallel arrays: neighbor ids (ascending), edge weights and the running
//! weight sum within the vertex's range. The running sums let the random walk
//! pick a neighbor proportionally to weight with one binary search.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Simple undirected graph with strictly positive edge weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
    edge_count: usize,
    weighted: bool,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            weights: Vec::new(),
            cumulative: Vec::new(),
            edge_count: 0,
            weighted: false,
        }
    }

    /// Builds a graph from `(u, v, w)` triples.
    ///
    /// Self-loops are dropped and parallel edges are merged by summing their
    /// weights. The graph is flagged weighted if any resulting weight differs
    /// from 1.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) has non-positive weight {w}"
                )));
            }
            if u != v {
                list.push((u.min(v), u.max(v), w));
            }
        }
        Ok(Self::from_canonical(n, merge_parallel(list).0, None))
    }

    /// `edges` must be sorted by `(u, v)` with `u < v` and free of duplicates.
    fn from_canonical(n: usize, edges: Vec<(usize, usize, f64)>, weighted: Option<bool>) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, v, _) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let slots = offsets[n];
        let mut targets = vec![0usize; slots];
        let mut weights = vec![0.0; slots];
        let mut fill = offsets.clone();
        // Sorted input yields sorted adjacency: every (x, u) with x < u is
        // visited before any (u, y) with y > u.
        for &(u, v, w) in &edges {
            targets[fill[u]] = v;
            weights[fill[u]] = w;
            fill[u] += 1;
            targets[fill[v]] = u;
            weights[fill[v]] = w;
            fill[v] += 1;
        }
        let mut cumulative = vec![0.0; slots];
        for v in 0..n {
            let mut acc = 0.0;
            for i in offsets[v]..offsets[v + 1] {
                acc += weights[i];
                cumulative[i] = acc;
            }
        }
        let weighted = weighted.unwrap_or_else(|| weights.iter().any(|&w| w != 1.0));
        Self {
            offsets,
            targets,
            weights,
            cumulative,
            edge_count: edges.len(),
            weighted,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Number of incident edges.
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sum of incident edge weights.
    pub fn weighted_degree(&self, v: usize) -> f64 {
        let (start, end) = (self.offsets[v], self.offsets[v + 1]);
        if start == end {
            0.0
        } else {
            self.cumulative[end - 1]
        }
    }

    /// Neighbors of `v` with edge weights, in ascending neighbor order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Neighbor ids of `v` and their running weight sums.
    pub(crate) fn adjacency(&self, v: usize) -> (&[usize], &[f64]) {
        let range = self.offsets[v]..self.offsets[v + 1];
        (&self.targets[range.clone()], &self.cumulative[range])
    }

    /// Every edge once as `(u, v, w)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    /// Sum of weighted degrees, i.e. twice the total edge weight.
    pub fn volume(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Copy with every edge weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let edges = self.edges().map(|(u, v, w)| (u, v, w * factor)).collect();
        Self::from_canonical(self.vertex_count(), edges, Some(self.weighted))
    }

    /// Multiplies `x` by the Laplacian `D - A` of this graph.
    pub fn laplacian_apply(&self, x: &[f64], out: &mut [f64]) {
        for v in 0..self.vertex_count() {
            let mut acc = self.weighted_degree(v) * x[v];
            for (u, w) in self.neighbors(v) {
                acc -= w * x[u];
            }
            out[v] = acc;
        }
    }

    /// Vertex ids sorted by ascending degree, ties by id.
    pub fn ascending_degree_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        order.sort_by_key(|&v| (self.degree(v), v));
        order
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v, w)| (u + shift, v + shift, w)))
            .collect();
        Self::from_canonical(
            shift + other.vertex_count(),
            edges,
            Some(self.weighted || other.weighted),
        )
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for (u, _) in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }
}

/// Sum of weighted degrees of `g`.
pub fn volume(g: &Graph) -> f64 {
    g.volume()
}

fn merge_parallel(mut list: Vec<(usize, usize, f64)>) -> (Vec<(usize, usize, f64)>, usize) {
    list.sort_by_key(|e| (e.0, e.1));
    let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(list.len());
    let mut duplicates = 0;
    for (u, v, w) in list {
        match merged.last_mut() {
            Some(last) if last.0 == u && last.1 == v => {
                last.2 += w;
                duplicates += 1;
            }
            _ => merged.push((u, v, w)),
        }
    }
    (merged, duplicates)
}

/// Options for [`load_edge_list`].
#[derive(Clone, Debug)]
pub struct LoadOptions {
    /// Ids in the file start at 1 instead of 0.
    pub one_indexed: bool,
    /// Lines starting with any of these are skipped.
    pub comment_prefixes: Vec<String>,
    /// Weight for lines with only two columns.
    pub default_weight: f64,
    /// Renumber the ids that occur in the file to `0..k` in ascending order.
    pub compact_ids: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            one_indexed: false,
            comment_prefixes: vec!["#".into(), "%".into()],
            default_weight: 1.0,
            compact_ids: false,
        }
    }
}

/// What the loader did besides building the graph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
    /// Original id of each vertex when ids were compacted.
    pub original_ids: Option<Vec<u64>>,
}

/// Parses a whitespace separated edge list (`u v` or `u v w` per line).
///
/// Without compaction the largest id fixes the vertex count, so isolated
/// vertices below it are kept. A `# n=<N> m=<M> weighted=<bool>` header, as
/// written by [`write_edge_list`], extends the vertex count to `N` and fixes
/// the weighted flag.
pub fn load_edge_list<R: BufRead>(reader: R, opts: &LoadOptions) -> Result<(Graph, LoadReport)> {
    if !(opts.default_weight.is_finite() && opts.default_weight > 0.0) {
        return Err(Error::Parameter("default weight must be positive".into()));
    }
    let mut raw: Vec<(u64, u64, f64)> = Vec::new();
    let mut header_n: Option<usize> = None;
    let mut header_weighted: Option<bool> = None;
    let mut saw_weight_column = false;
    let mut report = LoadReport::default();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if opts
            .comment_prefixes
            .iter()
            .any(|p| trimmed.starts_with(p.as_str()))
        {
            if trimmed.starts_with('#') {
                parse_header(trimmed, &mut header_n, &mut header_weighted);
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 2 or 3 columns, found {}", tokens.len()),
            });
        }
        let parse_id = |s: &str| -> Result<u64> {
            let id: u64 = s.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {s:?}"),
            })?;
            if opts.one_indexed {
                id.checked_sub(1).ok_or(Error::Parse {
                    line: lineno,
                    message: "id 0 in one-indexed input".into(),
                })
            } else {
                Ok(id)
            }
        };
        let u = parse_id(tokens[0])?;
        let v = parse_id(tokens[1])?;
        let w = match tokens.get(2) {
            Some(s) => {
                saw_weight_column = true;
                let w: f64 = s.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("invalid weight {s:?}"),
                })?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::NonPositiveWeight { line: lineno, weight: w });
                }
                w
            }
            None => opts.default_weight,
        };
        raw.push((u, v, w));
    }

    let (n, edges) = if opts.compact_ids {
        let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v, _)| [u, v]).collect();
        ids.sort_unstable();
        ids.dedup();
        let index = |id: u64| ids.binary_search(&id).expect("id collected above");
        let edges: Vec<_> = raw.iter().map(|&(u, v, w)| (index(u), index(v), w)).collect();
        let n = ids.len();
        report.original_ids = Some(ids);
        (n, edges)
    } else {
        let max_id = raw.iter().map(|&(u, v, _)| u.max(v)).max();
        let from_edges = max_id.map_or(0, |m| m as usize + 1);
        let n = from_edges.max(header_n.unwrap_or(0));
        let edges = raw.iter().map(|&(u, v, w)| (u as usize, v as usize, w)).collect();
        (n, edges)
    };

    let mut list = Vec::with_capacity(edges.len());
    for (u, v, w) in edges {
        if u == v {
            report.self_loops_dropped += 1;
        } else {
            list.push((u.min(v), u.max(v), w));
        }
    }
    let (merged, duplicates) = merge_parallel(list);
    report.duplicates_merged = duplicates;
    let weighted = header_weighted.unwrap_or(saw_weight_column);
    Ok((Graph::from_canonical(n, merged, Some(weighted)), report))
}

fn parse_header(line: &str, n: &mut Option<usize>, weighted: &mut Option<bool>) {
    for token in line.trim_start_matches('#').split_whitespace() {
        if let Some(value) = token.strip_prefix("n=") {
            if let Ok(value) = value.parse() {
                *n = Some(value);
            }
        } else if let Some(value) = token.strip_prefix("weighted=") {
            if let Ok(value) = value.parse() {
                *weighted = Some(value);
            }
        }
    }
}

/// Writes `g` as a `# n=.. m=.. weighted=..` header followed by `u v w`
/// lines sorted by `(u, v)`.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(
        out,
        "# n={} m={} weighted={}",
        g.vertex_count(),
        g.edge_count(),
        g.is_weighted()
    )?;
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}")?;
    }
    Ok(())
}

/// The input graph with edge weights scaled by `alpha` plus a universal
/// vertex joined to every original vertex by a unit-weight edge.
///
/// The universal vertex has id `n`; it is never stored explicitly.
#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    base: Graph,
    alpha: f64,
}

/// Builds the augmented graph of `g` for forest parameter `alpha`.
pub fn augment(g: &Graph, alpha: f64) -> Result<AugmentedGraph> {
    check_alpha(alpha)?;
    Ok(AugmentedGraph {
        base: g.scaled(alpha),
        alpha,
    })
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("alpha must be positive, got {alpha}")))
    }
}

impl AugmentedGraph {
    /// The original graph with weights already multiplied by alpha.
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Id of the universal vertex, equal to the original vertex count.
    pub fn universal_vertex(&self) -> usize {
        self.base.vertex_count()
    }

    /// Original vertices plus the universal vertex.
    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count() + 1
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count() + self.base.vertex_count()
    }

    pub fn degree(&self, v: usize) -> usize {
        if v == self.universal_vertex() {
            self.base.vertex_count()
        } else {
            self.base.degree(v) + 1
        }
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        if v == self.universal_vertex() {
            self.base.vertex_count() as f64
        } else {
            self.base.weighted_degree(v) + 1.0
        }
    }

    /// All edges: the scaled original edges in `(u, v)` order, then
    /// `(v, u*, 1)` for every original vertex `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let star = self.universal_vertex();
        self.base
            .edges()
            .chain((0..star).map(move |v| (v, star, 1.0)))
    }

    /// Neighbors of `v` in the augmented graph.
    pub fn neighbors(&self, v: usize) -> Vec<(usize, f64)> {
        let star = self.universal_vertex();
        if v == star {
            (0..star).map(|u| (u, 1.0)).collect()
        } else {
            let mut out: Vec<_> = self.base.neighbors(v).collect();
            out.push((star, 1.0));
            out
        }
    }

    /// Multiplies `x` (length n + 1) by the Laplacian of the augmented graph.
    pub fn laplacian_apply(&self, x: &[f64], out: &mut [f64]) {
        let star = self.universal_vertex();
        let xs = x[star];
        self.base.laplacian_apply(&x[..star], &mut out[..star]);
        let mut hub = star as f64 * xs;
        for v in 0..star {
            out[v] += x[v] - xs;
            hub -= x[v];
        }
        out[star] = hub;
    }

    /// Drops the universal vertex and divides the weights by alpha again.
    pub fn recover_original(&self) -> Graph {
        let edges = self
            .base
            .edges()
            .map(|(u, v, w)| (u, v, w / self.alpha))
            .collect();
        Graph::from_canonical(self.base.vertex_count(), edges, Some(self.base.weighted))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> (Graph, LoadReport) {
        load_edge_list(text.as_bytes(), &LoadOptions::default()).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, [(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn path_from_two_lines() {
        let (g, report) = load("0 1\n1 2");
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.edges().all(|(_, _, w)| w == 1.0));
        assert!(!g.is_weighted());
        assert_eq!(report, LoadReport::default());
    }

    #[test]
    fn parallel_edges_merge_by_sum() {
        let (g, report) = load("0 1 2.0\n1 0 3.0");
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 5.0)]);
        assert_eq!(report.duplicates_merged, 1);
        assert!(g.is_weighted());
    }

    #[test]
    fn self_loops_are_dropped_and_counted() {
        let (g, report) = load("0 0\n0 1");
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 1.0)]);
        assert_eq!(report.self_loops_dropped, 1);
    }

    #[test]
    fn comments_in_both_styles() {
        let (g, _) = load("% konect\n# snap\n\n0 1\n");
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_edge_list("0 1\n0 x\n".as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = load_edge_list("0 1 2 3\n".as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn nonpositive_weight_is_rejected() {
        for text in ["0 1 0", "0 1 -2.5", "0 1 nan"] {
            let err = load_edge_list(text.as_bytes(), &LoadOptions::default()).unwrap_err();
            assert!(
                matches!(err, Error::NonPositiveWeight { line: 1, .. } | Error::Parse { .. }),
                "{text}: {err}"
            );
        }
    }

    #[test]
    fn isolated_ids_are_kept_unless_compacted() {
        let (g, _) = load("0 5\n");
        assert_eq!(g.vertex_count(), 6);
        let opts = LoadOptions {
            compact_ids: true,
            ..LoadOptions::default()
        };
        let (g, report) = load_edge_list("10 5\n5 7\n".as_bytes(), &opts).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(report.original_ids, Some(vec![5, 7, 10]));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1, 1.0), (0, 2, 1.0)]);
    }

    #[test]
    fn one_indexed_input() {
        let opts = LoadOptions {
            one_indexed: true,
            ..LoadOptions::default()
        };
        let (g, _) = load_edge_list("1 2\n2 3\n".as_bytes(), &opts).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert!(load_edge_list("0 1\n".as_bytes(), &opts).is_err());
    }

    #[test]
    fn writer_round_trip_keeps_trailing_isolated_vertices() {
        let g = Graph::from_edges(6, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "# n=6 m=2 weighted=false\n0 1 1\n1 2 1\n");
        let (back, _) = load(&text);
        assert_eq!(back, g);
    }

    #[test]
    fn augment_k2_gives_unit_triangle() {
        let ag = augment(&k2(), 1.0).unwrap();
        assert_eq!(ag.vertex_count(), 3);
        assert_eq!(
            ag.edges().collect::<Vec<_>>(),
            vec![(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]
        );
    }

    #[test]
    fn augment_edgeless_gives_star() {
        let ag = augment(&Graph::empty(2), 1.0).unwrap();
        assert_eq!(ag.edges().collect::<Vec<_>>(), vec![(0, 2, 1.0), (1, 2, 1.0)]);
        assert_eq!(ag.degree(2), 2);
    }

    #[test]
    fn augment_scales_original_edges_only() {
        let ag = augment(&k2(), 3.0).unwrap();
        assert_eq!(
            ag.edges().collect::<Vec<_>>(),
            vec![(0, 1, 3.0), (0, 2, 1.0), (1, 2, 1.0)]
        );
        assert_eq!(ag.edge_count(), 3);
        assert_eq!(ag.weighted_degree(0), 4.0);
    }

    #[test]
    fn augment_rejects_bad_alpha() {
        for alpha in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(augment(&k2(), alpha), Err(Error::Parameter(_))));
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(&k2()), 2.0);
        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        assert_eq!(volume(&k3), 6.0);
        assert_eq!(volume(&Graph::empty(5)), 0.0);
    }

    #[test]
    fn augmented_laplacian_matches_edge_sum() {
        let g = Graph::from_edges(4, [(0, 1, 2.0), (1, 2, 0.5), (2, 3, 1.0)]).unwrap();
        let ag = augment(&g, 1.5).unwrap();
        let x = [0.3, -1.0, 2.0, 0.25, -0.7];
        let mut out = [0.0; 5];
        ag.laplacian_apply(&x, &mut out);
        let mut expect = [0.0; 5];
        for (u, v, w) in ag.edges() {
            let d = w * (x[u] - x[v]);
            expect[u] += d;
            expect[v] -= d;
        }
        for (a, b) in out.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn star_vertex_degree_is_n() {
        let g = Graph::from_edges(4, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let ag = augment(&g, 2.0).unwrap();
        assert_eq!(ag.degree(ag.universal_vertex()), 4);
        assert_eq!(ag.weighted_degree(ag.universal_vertex()), 4.0);
        assert_eq!(ag.neighbors(4).len(), 4);
    }

    #[test]
    fn recover_is_exact_for_power_of_two_alpha() {
        let g = Graph::from_edges(4, [(0, 1, 0.3), (1, 2, 1.7), (0, 3, 2.0)]).unwrap();
        assert_eq!(augment(&g, 4.0).unwrap().recover_original(), g);
        let back = augment(&g, 0.3).unwrap().recover_original();
        for ((u, v, w), (a, b, x)) in back.edges().zip(g.edges()) {
            assert_eq!((u, v), (a, b));
            assert!((w - x).abs() <= 1e-15 * x);
        }
    }

    fn arbitrary_graph() -> impl proptest::strategy::Strategy<Value = Graph> {
        use proptest::prelude::*;
        (1usize..12).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 0.01f64..10.0), 0..30)
                .prop_map(move |edges| Graph::from_edges(n, edges).unwrap())
        })
    }

    proptest::proptest! {
        #[test]
        fn edge_list_round_trip(g in arbitrary_graph()) {
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            let (back, _) = load_edge_list(buf.as_slice(), &LoadOptions::default()).unwrap();
            proptest::prop_assert_eq!(back, g);
        }

        #[test]
        fn augmented_shape(g in arbitrary_graph(), alpha in 0.01f64..100.0) {
            let ag = augment(&g, alpha).unwrap();
            let n = g.vertex_count();
            proptest::prop_assert_eq!(ag.vertex_count(), n + 1);
            proptest::prop_assert_eq!(ag.edge_count(), g.edge_count() + n);
            proptest::prop_assert_eq!(ag.edges().count(), g.edge_count() + n);
            let total: f64 = (0..=n).map(|v| ag.weighted_degree(v)).sum();
            let expect = 2.0 * (alpha * g.volume() / 2.0 + n as f64);
            proptest::prop_assert!((total - expect).abs() <= 1e-9 * expect.max(1.0));
        }
    }
}
