//! Aggregation of raw decision matrices into per-node miss-detection /
//! false-alarm curves, worst-fraction conditioning, and asymptotic sweep
//! tables.

use serde::Serialize;

use crate::engine::{RawResults, RunConfig};
use crate::error::{Error, Result};

/// Fraction of runs kept by the default "most unfavorable cases" curve.
pub const DEFAULT_UNFAVORABLE_FRACTION: f64 = 0.10;

/// Per-node error rates over a Monte Carlo batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeStats {
    /// 1-based node index.
    pub node_index: usize,
    /// `P{X_n = 0 | W=1}` estimate.
    pub md_rate: f64,
    /// `P{X_n = 1 | W=0}` estimate.
    pub fa_rate: f64,
    /// Miss-detection rate over the most unfavorable runs.
    pub md_worst_decile: f64,
    /// Binomial standard error of `md_rate`.
    pub stderr_md: f64,
    /// Binomial standard error of `fa_rate`.
    pub stderr_fa: f64,
}

/// Aggregated view of one experiment point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub config: RunConfig,
    /// Fraction used for the unfavorable-runs conditioning.
    pub unfavorable_fraction: f64,
    pub per_node: Vec<NodeStats>,
    /// Stats at the last node of the sequence.
    pub asymptotic: NodeStats,
}

/// One row of an asymptotic sweep table, keyed by the swept parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: f64,
    pub r: f64,
    pub tau: f64,
    pub n_star: usize,
    pub md_rate: f64,
    pub md_stderr: f64,
    pub fa_rate: f64,
    pub fa_stderr: f64,
    pub md_worst_decile: f64,
}

fn binomial_stderr(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Run indices ranked most-unfavorable-first: ascending final social
/// log-likelihood under `W=1` (least evidence for the true hypothesis),
/// ties broken by run index.
fn unfavorable_order(final_loglik: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..final_loglik.len()).collect();
    order.sort_by(|&a, &b| final_loglik[a].total_cmp(&final_loglik[b]).then(a.cmp(&b)));
    order
}

/// Per-node miss-detection rate over the worst `ceil(fraction * n_runs)`
/// runs of the `W=1` batch.
pub fn worst_decile_curve(raw: &RawResults, fraction: f64) -> Result<Vec<f64>> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidMetricParameter(format!(
            "unfavorable fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let w1 = raw.runs_for(true)?;
    let keep = ((fraction * w1.n_runs as f64).ceil() as usize).max(1);
    let order = unfavorable_order(&w1.final_loglik);
    let subset = &order[..keep.min(order.len())];
    let curve = (1..=w1.n_nodes)
        .map(|node| {
            let misses = subset
                .iter()
                .filter(|&&run| !w1.decision(run, node))
                .count();
            misses as f64 / subset.len() as f64
        })
        .collect();
    Ok(curve)
}

/// Per-node MD/FA curves with the default unfavorable fraction.
///
/// Requires both hypotheses in `raw`.
pub fn md_fa_curves(raw: &RawResults) -> Result<Vec<NodeStats>> {
    md_fa_curves_with(raw, DEFAULT_UNFAVORABLE_FRACTION)
}

/// Per-node MD/FA curves with an explicit unfavorable fraction.
pub fn md_fa_curves_with(raw: &RawResults, fraction: f64) -> Result<Vec<NodeStats>> {
    let w1 = raw.runs_for(true)?;
    let w0 = raw.runs_for(false)?;
    let worst = worst_decile_curve(raw, fraction)?;
    let stats = (1..=w1.n_nodes)
        .map(|node| {
            let md_rate = w1.miss_rate(node);
            let fa_rate = w0.emission_rate(node);
            NodeStats {
                node_index: node,
                md_rate,
                fa_rate,
                md_worst_decile: worst[node - 1],
                stderr_md: binomial_stderr(md_rate, w1.n_runs),
                stderr_fa: binomial_stderr(fa_rate, w0.n_runs),
            }
        })
        .collect();
    Ok(stats)
}

/// Builds the full report for one experiment point.
pub fn report(raw: &RawResults, fraction: f64) -> Result<MetricsReport> {
    let per_node = md_fa_curves_with(raw, fraction)?;
    let asymptotic = per_node
        .last()
        .cloned()
        .ok_or_else(|| Error::InvalidMetricParameter("empty node sequence".into()))?;
    Ok(MetricsReport {
        config: raw.config.clone(),
        unfavorable_fraction: fraction,
        per_node,
        asymptotic,
    })
}

/// Collapses reports over a parameter sweep into rows of last-node rates,
/// keyed by `(q, r, tau, n_star)`. All reports must share the same network
/// size.
pub fn asymptotic_sweep(reports: &[MetricsReport]) -> Result<Vec<SweepRow>> {
    let n_nodes = match reports.first() {
        Some(r) => r.config.n_nodes,
        None => return Ok(Vec::new()),
    };
    reports
        .iter()
        .map(|r| {
            if r.config.n_nodes != n_nodes {
                return Err(Error::InconsistentReports(format!(
                    "mixed network sizes in sweep: {} vs {}",
                    r.config.n_nodes, n_nodes
                )));
            }
            let a = &r.asymptotic;
            Ok(SweepRow {
                q: r.config.sensor.q,
                r: r.config.sensor.r,
                tau: r.config.tau,
                n_star: r.config.attack.n_star,
                md_rate: a.md_rate,
                md_stderr: a.stderr_md,
                fa_rate: a.fa_rate,
                fa_stderr: a.stderr_fa,
                md_worst_decile: a.md_worst_decile,
            })
        })
        .collect()
}
