//! Experiment specs: a TOML file of flat dotted keys, overridable from the
//! command line with `--set key=value`.
//!
//! Scalar-valued keys (`sensor.q`, `sensor.r`, `tau`, `attack.n_star`) also
//! accept lists; the run expands the cartesian product of all four axes
//! into sweep points.

use std::path::Path;

use serde::{Deserialize, Serialize};
use social_fusion::{AttackConfig, AttackStrategy, Hypothesis, RunConfig, SensorSpec};

use crate::error::CliError;

/// A key that is either one value or a sweep axis.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(vs) => vs.clone(),
        }
    }
}

fn default_tau() -> OneOrMany<f64> {
    OneOrMany::One(0.0)
}

fn default_worst_decile() -> f64 {
    0.10
}

fn default_formats() -> Vec<String> {
    vec!["csv".to_string()]
}

fn default_max_points() -> usize {
    4096
}

fn default_hypothesis() -> Hypothesis {
    Hypothesis::Both
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorKeys {
    q: OneOrMany<f64>,
    r: OneOrMany<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttackKeys {
    #[serde(default = "default_strategy")]
    strategy: AttackStrategy,
    #[serde(default = "default_n_star")]
    n_star: OneOrMany<usize>,
    /// 0 or 1; the rational attacker forces 0.
    #[serde(default)]
    forced_bit: u8,
}

fn default_strategy() -> AttackStrategy {
    AttackStrategy::None
}

fn default_n_star() -> OneOrMany<usize> {
    OneOrMany::One(0)
}

impl Default for AttackKeys {
    fn default() -> Self {
        AttackKeys {
            strategy: default_strategy(),
            n_star: default_n_star(),
            forced_bit: 0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputKeys {
    #[serde(default = "default_formats")]
    formats: Vec<String>,
}

impl Default for OutputKeys {
    fn default() -> Self {
        OutputKeys {
            formats: default_formats(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepKeys {
    #[serde(default = "default_max_points")]
    max_points: usize,
}

impl Default for SweepKeys {
    fn default() -> Self {
        SweepKeys {
            max_points: default_max_points(),
        }
    }
}

/// Raw spec file, structurally validated by the TOML deserializer (which
/// reports line-precise positions for syntax errors, unknown keys and type
/// mismatches).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    n_nodes: usize,
    runs: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_tau")]
    tau: OneOrMany<f64>,
    sensor: SensorKeys,
    #[serde(default)]
    attack: AttackKeys,
    #[serde(default = "default_hypothesis")]
    hypothesis: Hypothesis,
    #[serde(default = "default_worst_decile")]
    worst_decile: f64,
    #[serde(default)]
    output: OutputKeys,
    #[serde(default)]
    sweep: SweepKeys,
}

impl SpecFile {
    pub fn load(path: &Path) -> Result<SpecFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}:\n{e}", path.display())))
    }

    /// Applies one `key=value` override. Values use TOML syntax; a value
    /// that does not parse as TOML is taken as a bare string.
    pub fn apply_set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--set {assignment:?}: expected KEY=VALUE")))?;
        let (key, raw) = (key.trim(), raw.trim());
        let value = parse_fragment(raw);
        let fail =
            |expected: &str| CliError::Config(format!("--set {key}={raw}: expected {expected}"));
        match key {
            "n_nodes" => self.n_nodes = coerce_usize(&value).ok_or_else(|| fail("an integer"))?,
            "runs" => self.runs = coerce_usize(&value).ok_or_else(|| fail("an integer"))?,
            "seed" => self.seed = coerce_u64(&value).ok_or_else(|| fail("an integer"))?,
            "tau" => self.tau = coerce_f64_axis(&value).ok_or_else(|| fail("a number or list"))?,
            "sensor.q" => {
                self.sensor.q = coerce_f64_axis(&value).ok_or_else(|| fail("a number or list"))?
            }
            "sensor.r" => {
                self.sensor.r = coerce_f64_axis(&value).ok_or_else(|| fail("a number or list"))?
            }
            "attack.strategy" => {
                let name = value.as_str().ok_or_else(|| fail("a strategy name"))?;
                self.attack.strategy = name
                    .parse()
                    .map_err(|e| CliError::Config(format!("--set {key}: {e}")))?;
            }
            "attack.n_star" => {
                self.attack.n_star =
                    coerce_usize_axis(&value).ok_or_else(|| fail("an integer or list"))?
            }
            "attack.forced_bit" => {
                self.attack.forced_bit = coerce_u64(&value)
                    .map(|v| v as u8)
                    .ok_or_else(|| fail("0 or 1"))?
            }
            "hypothesis" => {
                self.hypothesis = match value.as_str() {
                    Some("w0") => Hypothesis::W0,
                    Some("w1") => Hypothesis::W1,
                    Some("both") => Hypothesis::Both,
                    _ => return Err(fail("w0, w1 or both")),
                }
            }
            "worst_decile" => {
                self.worst_decile = coerce_f64(&value).ok_or_else(|| fail("a number"))?
            }
            "output.formats" => {
                self.output.formats =
                    coerce_string_list(&value).ok_or_else(|| fail("a list of format names"))?
            }
            "sweep.max_points" => {
                self.sweep.max_points = coerce_usize(&value).ok_or_else(|| fail("an integer"))?
            }
            other => {
                return Err(CliError::Config(format!(
                    "--set {other}: unknown key (see the spec file reference in README.md)"
                )))
            }
        }
        Ok(())
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    pub fn set_runs(&mut self, runs: usize) {
        self.runs = runs;
    }

    /// Validates ranges and expands axis lists.
    pub fn resolve(&self) -> Result<ExperimentSpec, CliError> {
        let cfg = |msg: String| CliError::Config(msg);

        if self.n_nodes == 0 {
            return Err(cfg("n_nodes: must be >= 1".into()));
        }
        if self.runs == 0 {
            return Err(cfg("runs: must be >= 1".into()));
        }
        let q_axis = self.sensor.q.values();
        let r_axis = self.sensor.r.values();
        let tau_axis = self.tau.values();
        let n_star_axis = self.attack.n_star.values();
        for (key, axis) in [
            ("sensor.q", &q_axis),
            ("sensor.r", &r_axis),
            ("tau", &tau_axis),
        ] {
            if axis.is_empty() {
                return Err(cfg(format!("{key}: sweep axis must be non-empty")));
            }
        }
        if n_star_axis.is_empty() {
            return Err(cfg("attack.n_star: sweep axis must be non-empty".into()));
        }
        for (i, &q) in q_axis.iter().enumerate() {
            for (j, &r) in r_axis.iter().enumerate() {
                SensorSpec::new(q, r)
                    .map_err(|e| cfg(format!("sensor.q[{i}] = {q}, sensor.r[{j}] = {r}: {e}")))?;
            }
        }
        for (i, &tau) in tau_axis.iter().enumerate() {
            if !tau.is_finite() {
                return Err(cfg(format!("tau[{i}] = {tau}: must be finite")));
            }
        }
        for (i, &n_star) in n_star_axis.iter().enumerate() {
            if n_star > self.n_nodes {
                return Err(cfg(format!(
                    "attack.n_star[{i}] = {n_star}: exceeds n_nodes ({})",
                    self.n_nodes
                )));
            }
        }
        if self.attack.forced_bit > 1 {
            return Err(cfg(format!(
                "attack.forced_bit = {}: must be 0 or 1",
                self.attack.forced_bit
            )));
        }
        if !(self.worst_decile > 0.0 && self.worst_decile <= 1.0) {
            return Err(cfg(format!(
                "worst_decile = {}: must lie in (0, 1]",
                self.worst_decile
            )));
        }
        // The per-node CSV schema carries both md and fa columns, so a run
        // always needs both conditional batches.
        if self.hypothesis != Hypothesis::Both {
            return Err(cfg(
                "hypothesis: the run command needs \"both\" (md columns come from w1 runs, \
                 fa columns from w0 runs)"
                    .into(),
            ));
        }
        let mut formats = OutputFormats::default();
        for name in &self.output.formats {
            match name.as_str() {
                "csv" => formats.csv = true,
                "svg" => formats.svg = true,
                other => {
                    return Err(cfg(format!(
                        "output.formats: unknown format {other:?} (expected csv or svg)"
                    )))
                }
            }
        }
        let points = q_axis.len() * r_axis.len() * tau_axis.len() * n_star_axis.len();
        if points > self.sweep.max_points {
            return Err(cfg(format!(
                "sweep expands to {points} points, above sweep.max_points = {}",
                self.sweep.max_points
            )));
        }

        Ok(ExperimentSpec {
            n_nodes: self.n_nodes,
            runs: self.runs,
            seed: self.seed,
            q_axis,
            r_axis,
            tau_axis,
            n_star_axis,
            strategy: self.attack.strategy,
            forced_bit: self.attack.forced_bit == 1,
            hypothesis: self.hypothesis,
            worst_decile: self.worst_decile,
            formats,
            max_points: self.sweep.max_points,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OutputFormats {
    pub csv: bool,
    pub svg: bool,
}

/// Fully validated experiment description with expanded sweep axes.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub n_nodes: usize,
    pub runs: usize,
    pub seed: u64,
    pub q_axis: Vec<f64>,
    pub r_axis: Vec<f64>,
    pub tau_axis: Vec<f64>,
    pub n_star_axis: Vec<usize>,
    pub strategy: AttackStrategy,
    pub forced_bit: bool,
    pub hypothesis: Hypothesis,
    pub worst_decile: f64,
    pub formats: OutputFormats,
    pub max_points: usize,
}

/// One point of the cartesian sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub q: f64,
    pub r: f64,
    pub tau: f64,
    pub n_star: usize,
}

impl ExperimentSpec {
    /// Sweep points in deterministic order: q, then r, then tau, then N*.
    pub fn sweep_points(&self) -> Vec<SweepPoint> {
        let mut points = Vec::new();
        for &q in &self.q_axis {
            for &r in &self.r_axis {
                for &tau in &self.tau_axis {
                    for &n_star in &self.n_star_axis {
                        points.push(SweepPoint { q, r, tau, n_star });
                    }
                }
            }
        }
        points
    }

    pub fn run_config(&self, point: &SweepPoint) -> RunConfig {
        RunConfig {
            n_nodes: self.n_nodes,
            sensor: SensorSpec {
                q: point.q,
                r: point.r,
            },
            tau: point.tau,
            attack: AttackConfig {
                strategy: self.strategy,
                n_star: point.n_star,
                forced_bit: self.forced_bit,
            },
            n_runs: self.runs,
            seed: self.seed,
            hypothesis: self.hypothesis,
        }
    }
}

/// Parses a `--set` value: TOML fragment first, bare string as fallback.
fn parse_fragment(raw: &str) -> toml::Value {
    let wrapped = format!("v = {raw}");
    match toml::from_str::<toml::Table>(&wrapped) {
        Ok(mut table) => table.remove("v").expect("key v just parsed"),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

fn coerce_f64(v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(f) => Some(*f),
        toml::Value::Integer(i) => Some(*i as f64),
        _ => None,
    }
}

fn coerce_u64(v: &toml::Value) -> Option<u64> {
    match v {
        toml::Value::Integer(i) if *i >= 0 => Some(*i as u64),
        _ => None,
    }
}

fn coerce_usize(v: &toml::Value) -> Option<usize> {
    coerce_u64(v).map(|v| v as usize)
}

fn coerce_f64_axis(v: &toml::Value) -> Option<OneOrMany<f64>> {
    if let Some(x) = coerce_f64(v) {
        return Some(OneOrMany::One(x));
    }
    if let toml::Value::Array(items) = v {
        let xs: Option<Vec<f64>> = items.iter().map(coerce_f64).collect();
        return xs.map(OneOrMany::Many);
    }
    None
}

fn coerce_usize_axis(v: &toml::Value) -> Option<OneOrMany<usize>> {
    if let Some(x) = coerce_usize(v) {
        return Some(OneOrMany::One(x));
    }
    if let toml::Value::Array(items) = v {
        let xs: Option<Vec<usize>> = items.iter().map(coerce_usize).collect();
        return xs.map(OneOrMany::Many);
    }
    None
}

fn coerce_string_list(v: &toml::Value) -> Option<Vec<String>> {
    match v {
        toml::Value::String(s) => Some(vec![s.clone()]),
        toml::Value::Array(items) => items
            .iter()
            .map(|i| i.as_str().map(str::to_string))
            .collect(),
        _ => None,
    }
}
