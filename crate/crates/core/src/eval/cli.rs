//! The `fcc` command-line interface.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on runtime errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::approx::{approx_diag_forest_matrix, exact_diag, rank_vertices, ApproxConfig, DiagResult, Estimator, Method};
use crate::error::{Error, Result};
use crate::eval::bench::{run_bench, write_bench_table, BenchMethod, Reference};
use crate::eval::generate::{generate, Model};
use crate::eval::metrics::{avg_abs_error, kendall_tau, max_abs_error};
use crate::eval::results::{write_group_result, ResultFile};
use crate::graph::{load_edge_list, write_edge_list, Graph, LoadOptions, LoadReport};
use crate::group::greedy_group_with;
use crate::jlt::{jlt_diag, JltConfig};
use crate::oracle::Oracle;

/// Environment variable consulted when `--threads` is not given.
pub const THREADS_ENV: &str = "FCC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "fcc", version, about = "Forest closeness centrality: exact, sampled and sketched")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Estimate the forest matrix diagonal, farness and closeness of every vertex.
    Diag {
        #[command(flatten)]
        run: RunArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rank vertices by forest closeness.
    Rank {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        top: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Greedily pick a group of maximum group forest closeness.
    Group {
        #[command(flatten)]
        input: InputArgs,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = crate::oracle::DEFAULT_LIMIT)]
        oracle_limit: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare two result files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Metric::Kt)]
        metric: Metric,
        /// Column to compare; defaults to closeness for kt and diag otherwise.
        #[arg(long)]
        field: Option<String>,
    },
    /// Write a synthetic graph as an edge list.
    Gen {
        #[arg(value_enum)]
        model: ModelKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time/accuracy table of the estimators against the exact diagonal.
    Bench {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "ust,jlt")]
        methods: Vec<BenchMethod>,
        #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2,0.3,0.4,0.5")]
        eps_grid: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// First seed; `--seeds` consecutive seeds are run per cell.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, env = THREADS_ENV, default_value_t = 0)]
        threads: usize,
        #[arg(long, default_value_t = crate::oracle::DEFAULT_LIMIT)]
        oracle_limit: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Edge list: `u v [w]` per line, `#` or `%` comments.
    graph: PathBuf,
    #[arg(long)]
    one_indexed: bool,
    /// Renumber the ids present in the file to 0..k.
    #[arg(long)]
    compact: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = Method::Ust)]
    method: Method,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 0.5)]
    kappa: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = THREADS_ENV, default_value_t = 0)]
    threads: usize,
    #[arg(long, value_enum, default_value_t = Estimator::Frequency)]
    estimator: Estimator,
    /// Number of sampled trees (ust) or projected systems (jlt) instead of the derived count.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = crate::oracle::DEFAULT_LIMIT)]
    oracle_limit: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Metric {
    Kt,
    Maxabs,
    Avgabs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelKind {
    Er,
    Path,
    Star,
    Complete,
    Grid,
}

/// Parses `argv` (including the program name) and runs the command, writing
/// summaries to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn load(input: &InputArgs, err: &mut dyn Write) -> Result<(Graph, LoadReport)> {
    let opts = LoadOptions {
        one_indexed: input.one_indexed,
        compact_ids: input.compact,
        ..LoadOptions::default()
    };
    let file = File::open(&input.graph)
        .map_err(|e| Error::Parameter(format!("cannot open {}: {e}", input.graph.display())))?;
    let (graph, report) = load_edge_list(BufReader::new(file), &opts)?;
    if report.self_loops_dropped > 0 {
        writeln!(err, "warning: dropped {} self-loop(s)", report.self_loops_dropped)?;
    }
    if report.duplicates_merged > 0 {
        writeln!(err, "warning: merged {} parallel edge(s)", report.duplicates_merged)?;
    }
    Ok((graph, report))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Parameter(format!("cannot create {}: {e}", path.display())))
}

fn compute(run: &RunArgs, g: &Graph) -> Result<DiagResult> {
    match run.method {
        Method::Exact => exact_diag(g, run.alpha, &Oracle::with_limit(run.oracle_limit)),
        Method::Ust => {
            let cfg = ApproxConfig {
                alpha: run.alpha,
                eps: run.eps,
                delta: run.delta,
                kappa: run.kappa,
                seed: run.seed,
                workers: run.threads,
                estimator: run.estimator,
                tau_override: run.samples,
            };
            approx_diag_forest_matrix(g, &cfg)
        }
        Method::Jlt => {
            let cfg = JltConfig {
                eps: run.eps,
                seed: run.seed,
                workers: run.threads,
                q_override: run.samples,
                ..JltConfig::default()
            };
            jlt_diag(g, run.alpha, &cfg)
        }
    }
}

fn summarize(dr: &DiagResult, out: &mut dyn Write) -> Result<()> {
    let seed = dr.params.seed.map_or(String::from("-"), |s| s.to_string());
    writeln!(
        out,
        "method={} n={} samples={} seed={} time={:.3}s",
        format!("{:?}", dr.method).to_lowercase(),
        dr.diag.len(),
        dr.samples,
        seed,
        dr.wall_time_secs
    )?;
    if let Some(res) = dr.solver_residual {
        writeln!(out, "solver residual={res:e} iterations={}", dr.solver_iterations)?;
    }
    Ok(())
}

fn vertex_id(report: &LoadReport, v: usize) -> u64 {
    report.original_ids.as_ref().map_or(v as u64, |ids| ids[v])
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Diag { run, output } => {
            let (g, report) = load(&run.input, err)?;
            let dr = compute(&run, &g)?;
            summarize(&dr, out)?;
            let shown = dr.diag.len().min(10);
            for v in 0..shown {
                writeln!(out, "{}\t{}", vertex_id(&report, v), dr.diag[v])?;
            }
            if shown < dr.diag.len() {
                writeln!(out, "... ({} more)", dr.diag.len() - shown)?;
            }
            if let Some(path) = output {
                let file = ResultFile::from_diag(&dr, report.original_ids.as_deref(), run.threads);
                let mut w = create(&path)?;
                file.write(&mut w)?;
                w.flush()?;
            }
        }
        Command::Rank { run, top, output } => {
            let (g, report) = load(&run.input, err)?;
            let dr = compute(&run, &g)?;
            summarize(&dr, out)?;
            let ranking = rank_vertices(&dr, top);
            for (place, (v, c)) in ranking.iter().take(top.unwrap_or(10)).enumerate() {
                writeln!(out, "{}\t{}\t{}", place + 1, vertex_id(&report, *v), c)?;
            }
            if let Some(path) = output {
                let mut w = create(&path)?;
                writeln!(w, "rank\tvertex\tcloseness")?;
                for (place, (v, c)) in ranking.iter().enumerate() {
                    writeln!(w, "{}\t{}\t{}", place + 1, vertex_id(&report, *v), c)?;
                }
                w.flush()?;
            }
        }
        Command::Group {
            input,
            k,
            alpha,
            oracle_limit,
            output,
        } => {
            let (g, report) = load(&input, err)?;
            let result = greedy_group_with(&g, alpha, k, Oracle::with_limit(oracle_limit))?;
            let ids: Vec<u64> = result.selected.iter().map(|&v| vertex_id(&report, v)).collect();
            writeln!(
                out,
                "group={ids:?} farness={} closeness={}",
                result.final_farness, result.final_closeness
            )?;
            if let Some(path) = output {
                let mut w = create(&path)?;
                write_group_result(&result, alpha, report.original_ids.as_deref(), &mut w)?;
                w.flush()?;
            }
        }
        Command::Compare { a, b, metric, field } => {
            let read = |p: &Path| -> Result<ResultFile> {
                let f = File::open(p).map_err(|e| Error::Parameter(format!("cannot open {}: {e}", p.display())))?;
                ResultFile::read(BufReader::new(f))
            };
            let (fa, fb) = (read(&a)?, read(&b)?);
            let field = field.unwrap_or_else(|| match metric {
                Metric::Kt => "closeness".into(),
                _ => "diag".into(),
            });
            let (xa, xb) = aligned(&fa, &fb, &field)?;
            let value = match metric {
                Metric::Kt => kendall_tau(&xa, &xb)?,
                Metric::Maxabs => max_abs_error(&xa, &xb)?,
                Metric::Avgabs => avg_abs_error(&xa, &xb)?,
            };
            writeln!(out, "{value}")?;
        }
        Command::Gen {
            model,
            n,
            p,
            rows,
            cols,
            seed,
            output,
        } => {
            let need = |v: Option<usize>, name: &str| {
                v.ok_or_else(|| Error::Parameter(format!("--{name} is required for this model")))
            };
            let model = match model {
                ModelKind::Er => Model::ErdosRenyi {
                    n: need(n, "n")?,
                    p: p.ok_or_else(|| Error::Parameter("--p is required for er".into()))?,
                },
                ModelKind::Path => Model::Path { n: need(n, "n")? },
                ModelKind::Star => Model::Star { n: need(n, "n")? },
                ModelKind::Complete => Model::Complete { n: need(n, "n")? },
                ModelKind::Grid => Model::Grid {
                    rows: need(rows, "rows")?,
                    cols: need(cols, "cols")?,
                },
            };
            let g = generate(&model, seed)?;
            writeln!(out, "n={} m={} seed={seed}", g.vertex_count(), g.edge_count())?;
            match output {
                Some(path) => {
                    let mut w = create(&path)?;
                    write_edge_list(&g, &mut w)?;
                    w.flush()?;
                }
                None => write_edge_list(&g, &mut *out)?,
            }
        }
        Command::Bench {
            input,
            methods,
            eps_grid,
            alpha,
            seed,
            seeds,
            threads,
            oracle_limit,
            output,
        } => {
            let (g, _) = load(&input, err)?;
            let reference = Reference::exact(&g, alpha, &Oracle::with_limit(oracle_limit))?;
            let seeds: Vec<u64> = (seed..seed + seeds.max(1)).collect();
            let rows = run_bench(&g, alpha, &methods, &eps_grid, &seeds, threads, &reference)?;
            match output {
                Some(path) => {
                    let mut w = create(&path)?;
                    write_bench_table(&rows, &mut w)?;
                    w.flush()?;
                    writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
                }
                None => write_bench_table(&rows, &mut *out)?,
            }
        }
    }
    Ok(())
}

/// Values of `field` from both files, matched by vertex id.
fn aligned(a: &ResultFile, b: &ResultFile, field: &str) -> Result<(Vec<f64>, Vec<f64>)> {
    let xa = a.column(field)?;
    let xb = b.column(field)?;
    let mut ib: Vec<(u64, usize)> = b.records.iter().enumerate().map(|(i, r)| (r.vertex, i)).collect();
    ib.sort_unstable();
    let mut ordered = Vec::with_capacity(xa.len());
    if a.records.len() != b.records.len() {
        return Err(Error::Mismatch("result files cover different vertex sets".into()));
    }
    for r in &a.records {
        let pos = ib
            .binary_search_by_key(&r.vertex, |p| p.0)
            .map_err(|_| Error::Mismatch(format!("vertex {} missing from second file", r.vertex)))?;
        ordered.push(xb[ib[pos].1]);
    }
    Ok((xa, ordered))
}
