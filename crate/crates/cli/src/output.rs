//! Plot-ready CSV files and the run manifest.
//!
//! Floats are written in Rust's shortest round-trip decimal form, which is
//! locale-independent; CSVs are RFC-4180 style with a mandatory header row.

use std::path::{Path, PathBuf};

use serde_json::json;
use social_fusion::{MetricsReport, SweepRow};

use crate::config::{ExperimentSpec, SweepPoint};
use crate::error::CliError;

/// Marker dropped into the output directory while a run is in flight; its
/// presence after the fact flags an incomplete run.
pub const INCOMPLETE_MARKER: &str = ".incomplete";

pub fn runtime_err(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(format!("{context}: {e}"))
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// `nodes_q{q}_r{r}_tau{tau}_nstar{n}.csv`, stable for a given point.
pub fn point_csv_name(p: &SweepPoint) -> String {
    format!("nodes_q{}_r{}_tau{}_nstar{}.csv", p.q, p.r, p.tau, p.n_star)
}

pub fn point_svg_name(p: &SweepPoint) -> String {
    format!("nodes_q{}_r{}_tau{}_nstar{}.svg", p.q, p.r, p.tau, p.n_star)
}

/// Per-node curve file: one row per node, fixed column order.
pub fn write_per_node_csv(path: &Path, report: &MetricsReport) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| runtime_err(&format!("create {}", path.display()), e))?;
    w.write_record([
        "node_index",
        "md_rate",
        "md_stderr",
        "fa_rate",
        "fa_stderr",
        "md_worst_decile",
    ])
    .and_then(|_| {
        for s in &report.per_node {
            w.write_record([
                s.node_index.to_string(),
                fmt_f64(s.md_rate),
                fmt_f64(s.stderr_md),
                fmt_f64(s.fa_rate),
                fmt_f64(s.stderr_fa),
                fmt_f64(s.md_worst_decile),
            ])?;
        }
        w.flush()?;
        Ok(())
    })
    .map_err(|e| runtime_err(&format!("write {}", path.display()), e))
}

/// Sweep summary: asymptotic (last-node) rates keyed by the swept values.
pub fn write_summary_csv(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| runtime_err(&format!("create {}", path.display()), e))?;
    w.write_record([
        "q",
        "r",
        "tau",
        "n_star",
        "md_rate",
        "md_stderr",
        "fa_rate",
        "fa_stderr",
        "md_worst_decile",
    ])
    .and_then(|_| {
        for row in rows {
            w.write_record([
                fmt_f64(row.q),
                fmt_f64(row.r),
                fmt_f64(row.tau),
                row.n_star.to_string(),
                fmt_f64(row.md_rate),
                fmt_f64(row.md_stderr),
                fmt_f64(row.fa_rate),
                fmt_f64(row.fa_stderr),
                fmt_f64(row.md_worst_decile),
            ])?;
        }
        w.flush()?;
        Ok(())
    })
    .map_err(|e| runtime_err(&format!("write {}", path.display()), e))
}

/// Files produced for one sweep point.
#[derive(Debug, Clone)]
pub struct PointArtifacts {
    pub point: SweepPoint,
    pub per_node_csv: String,
    pub svg: Option<String>,
}

/// Machine-readable run manifest: effective config, tool version, and the
/// conventions a consumer needs to interpret the numbers. Deterministic
/// (keys sorted, no timestamps).
pub fn manifest_json(spec: &ExperimentSpec, points: &[PointArtifacts]) -> serde_json::Value {
    json!({
        "tool": {
            "name": "social-fusion",
            "version": env!("CARGO_PKG_VERSION"),
        },
        "config": {
            "n_nodes": spec.n_nodes,
            "runs": spec.runs,
            "seed": spec.seed,
            "tau": spec.tau_axis,
            "sensor": { "q": spec.q_axis, "r": spec.r_axis },
            "attack": {
                "strategy": spec.strategy.as_str(),
                "n_star": spec.n_star_axis,
                "forced_bit": spec.forced_bit as u8,
            },
            "hypothesis": spec.hypothesis,
            "worst_decile": spec.worst_decile,
            "output": { "formats": {
                "csv": spec.formats.csv,
                "svg": spec.formats.svg,
            }},
            "sweep": { "max_points": spec.max_points },
        },
        "conventions": {
            "runs_per_sweep_point": spec.runs,
            "hypotheses": "w0 and w1 simulated as separate conditional batches; no prior on W is drawn",
            "unfavorable_ranking": "w1 runs ranked by ascending final social log-likelihood, ties broken by run index; the worst ceil(fraction*runs) runs are kept",
            "seed_mixing": "per-stream ChaCha8 seed = splitmix64(seed XOR (stream * 0x9E3779B97F4A7C15)); trace streams use 2*run_index + w, the attack plan uses stream 2^64-1",
            "csv_floats": "shortest round-trip decimal",
        },
        "outputs": {
            "summary": "summary.csv",
            "points": points.iter().map(|p| json!({
                "q": p.point.q,
                "r": p.point.r,
                "tau": p.point.tau,
                "n_star": p.point.n_star,
                "per_node": p.per_node_csv,
                "plot": p.svg,
            })).collect::<Vec<_>>(),
        },
    })
}

pub fn write_manifest(
    dir: &Path,
    spec: &ExperimentSpec,
    points: &[PointArtifacts],
) -> Result<PathBuf, CliError> {
    let path = dir.join("manifest.json");
    let value = manifest_json(spec, points);
    let text =
        serde_json::to_string_pretty(&value).map_err(|e| runtime_err("serialize manifest", e))?;
    std::fs::write(&path, text + "\n")
        .map_err(|e| runtime_err(&format!("write {}", path.display()), e))?;
    Ok(path)
}
