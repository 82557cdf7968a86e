//! Result files: one `#`-prefixed JSON metadata line followed by a TSV table.
//!
//! ```text
//! #{"method":"ust","n":2,"alpha":1.0,...}
//! vertex    diag    farness    closeness
//! 0    0.6667    0.6667    3
//! ```
//!
//! Floats are written in shortest round-trip form; infinite closeness is
//! written as `null`.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::approx::{DiagResult, Method, RunParams};
use crate::error::{Error, Result};
use crate::group::GroupResult;

pub const DIAG_HEADER: &str = "vertex\tdiag\tfarness\tcloseness";
pub const GROUP_HEADER: &str = "step\tvertex\tgain\tfarness";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultMeta {
    pub method: Method,
    pub n: usize,
    #[serde(flatten)]
    pub params: RunParams,
    /// Trees sampled or systems solved.
    pub samples: u64,
    pub solver_residual: Option<f64>,
    pub solver_iterations: usize,
    pub workers: usize,
    pub wall_time_secs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    pub vertex: u64,
    pub diag: f64,
    pub farness: f64,
    pub closeness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultFile {
    pub meta: ResultMeta,
    pub records: Vec<ResultRecord>,
}

fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        "null".to_string()
    }
}

fn parse_float(s: &str, line: usize) -> Result<f64> {
    if s == "null" {
        return Ok(f64::INFINITY);
    }
    s.parse()
        .map_err(|_| Error::Format(format!("line {line}: invalid number {s:?}")))
}

impl ResultFile {
    /// Packs a diagonal result; `ids` maps vertex indices back to file ids.
    pub fn from_diag(dr: &DiagResult, ids: Option<&[u64]>, workers: usize) -> Self {
        let records = (0..dr.diag.len())
            .map(|v| ResultRecord {
                vertex: ids.map_or(v as u64, |ids| ids[v]),
                diag: dr.diag[v],
                farness: dr.farness[v],
                closeness: dr.closeness[v],
            })
            .collect();
        Self {
            meta: ResultMeta {
                method: dr.method,
                n: dr.diag.len(),
                params: dr.params.clone(),
                samples: dr.samples,
                solver_residual: dr.solver_residual,
                solver_iterations: dr.solver_iterations,
                workers,
                wall_time_secs: dr.wall_time_secs,
            },
            records,
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<()> {
        let meta = serde_json::to_string(&self.meta).map_err(|e| Error::Format(e.to_string()))?;
        writeln!(out, "#{meta}")?;
        writeln!(out, "{DIAG_HEADER}")?;
        for r in &self.records {
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                r.vertex,
                format_float(r.diag),
                format_float(r.farness),
                format_float(r.closeness)
            )?;
        }
        Ok(())
    }

    pub fn read<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let meta_line = match lines.next() {
            Some((_, line)) => line?,
            None => return Err(Error::Format("empty result file".into())),
        };
        let json = meta_line
            .strip_prefix('#')
            .ok_or_else(|| Error::Format("missing metadata line".into()))?;
        let meta: ResultMeta =
            serde_json::from_str(json).map_err(|e| Error::Format(format!("metadata: {e}")))?;
        match lines.next() {
            Some((_, line)) if line.as_deref().is_ok_and(|l| l == DIAG_HEADER) => {}
            _ => return Err(Error::Format("missing column header".into())),
        }
        let mut records = Vec::with_capacity(meta.n);
        for (idx, line) in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(Error::Format(format!("line {lineno}: expected 4 fields")));
            }
            records.push(ResultRecord {
                vertex: fields[0]
                    .parse()
                    .map_err(|_| Error::Format(format!("line {lineno}: invalid vertex id")))?,
                diag: parse_float(fields[1], lineno)?,
                farness: parse_float(fields[2], lineno)?,
                closeness: parse_float(fields[3], lineno)?,
            });
        }
        if records.len() != meta.n {
            return Err(Error::Format(format!(
                "metadata announces {} records, found {}",
                meta.n,
                records.len()
            )));
        }
        Ok(Self { meta, records })
    }

    /// Column selected by name: `diag`, `farness` or `closeness`.
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let pick: fn(&ResultRecord) -> f64 = match name {
            "diag" => |r| r.diag,
            "farness" => |r| r.farness,
            "closeness" => |r| r.closeness,
            other => return Err(Error::Parameter(format!("unknown column {other:?}"))),
        };
        Ok(self.records.iter().map(pick).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupMeta {
    pub alpha: f64,
    pub k: usize,
    pub final_farness: f64,
    pub final_closeness: f64,
    pub refreshes: usize,
    pub wall_time_secs: f64,
}

/// Writes a greedy group as metadata plus one row per selection step. The
/// first step has no gain and records `null`.
pub fn write_group_result<W: Write>(
    result: &GroupResult,
    alpha: f64,
    ids: Option<&[u64]>,
    mut out: W,
) -> Result<()> {
    let meta = GroupMeta {
        alpha,
        k: result.selected.len(),
        final_farness: result.final_farness,
        final_closeness: result.final_closeness,
        refreshes: result.refreshes,
        wall_time_secs: result.wall_time_secs,
    };
    let meta = serde_json::to_string(&meta).map_err(|e| Error::Format(e.to_string()))?;
    writeln!(out, "#{meta}")?;
    writeln!(out, "{GROUP_HEADER}")?;
    for (step, &v) in result.selected.iter().enumerate() {
        let gain = if step == 0 {
            f64::INFINITY
        } else {
            result.gains[step - 1]
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            step + 1,
            ids.map_or(v as u64, |ids| ids[v]),
            format_float(gain),
            format_float(result.farness_trajectory[step])
        )?;
    }
    Ok(())
}
