//! Command implementations shared by the binary and the test suites.

use std::path::{Path, PathBuf};

use social_fusion::{asymptotic_sweep, monte_carlo, oracle, MetricsReport};

use crate::config::SpecFile;
use crate::error::CliError;
use crate::output::{self, PointArtifacts, INCOMPLETE_MARKER};
use crate::plot;

/// Options of `run` / `sweep`.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub spec: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub runs: Option<usize>,
    pub jobs: Option<usize>,
    pub sets: Vec<String>,
}

/// What a completed run left on disk.
#[derive(Debug)]
pub struct RunArtifacts {
    pub out_dir: PathBuf,
    pub points: Vec<PointArtifacts>,
    pub summary_csv: PathBuf,
    pub manifest: PathBuf,
}

pub fn cmd_run(opts: &RunOptions) -> Result<RunArtifacts, CliError> {
    let mut file = SpecFile::load(&opts.spec)?;
    for assignment in &opts.sets {
        file.apply_set(assignment)?;
    }
    if let Some(seed) = opts.seed {
        file.set_seed(seed);
    }
    if let Some(runs) = opts.runs {
        if runs == 0 {
            return Err(CliError::Config("--runs must be >= 1".into()));
        }
        file.set_runs(runs);
    }
    let spec = file.resolve()?;

    match opts.jobs {
        None => execute(&spec, &opts.out),
        Some(0) => Err(CliError::Config("--jobs must be >= 1".into())),
        Some(jobs) => {
            // A dedicated pool keeps `--jobs` from touching global state;
            // per-run seeding makes the output identical for every value.
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| CliError::Runtime(format!("cannot build thread pool: {e}")))?;
            pool.install(|| execute(&spec, &opts.out))
        }
    }
}

fn execute(spec: &crate::config::ExperimentSpec, out_dir: &Path) -> Result<RunArtifacts, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| output::runtime_err(&format!("create {}", out_dir.display()), e))?;
    let marker = out_dir.join(INCOMPLETE_MARKER);
    std::fs::write(&marker, "run in progress or aborted\n")
        .map_err(|e| output::runtime_err(&format!("write {}", marker.display()), e))?;

    let mut points = Vec::new();
    let mut reports: Vec<MetricsReport> = Vec::new();
    for point in spec.sweep_points() {
        let config = spec.run_config(&point);
        let raw = monte_carlo(&config)
            .map_err(|e| CliError::Runtime(format!("sweep point {point:?}: {e}")))?;
        let report = social_fusion::metrics::report(&raw, spec.worst_decile)
            .map_err(|e| CliError::Runtime(format!("sweep point {point:?}: {e}")))?;

        let csv_name = output::point_csv_name(&point);
        output::write_per_node_csv(&out_dir.join(&csv_name), &report)?;
        let svg_name = if spec.formats.svg {
            let name = output::point_svg_name(&point);
            std::fs::write(out_dir.join(&name), plot::render_curves_svg(&report))
                .map_err(|e| output::runtime_err(&format!("write {name}"), e))?;
            Some(name)
        } else {
            None
        };

        points.push(PointArtifacts {
            point,
            per_node_csv: csv_name,
            svg: svg_name,
        });
        reports.push(report);
    }

    let rows = asymptotic_sweep(&reports).map_err(|e| CliError::Runtime(e.to_string()))?;
    let summary_csv = out_dir.join("summary.csv");
    output::write_summary_csv(&summary_csv, &rows)?;
    let manifest = output::write_manifest(out_dir, spec, &points)?;

    std::fs::remove_file(&marker)
        .map_err(|e| output::runtime_err(&format!("remove {}", marker.display()), e))?;
    Ok(RunArtifacts {
        out_dir: out_dir.to_path_buf(),
        points,
        summary_csv,
        manifest,
    })
}

/// Runs the enumeration-vs-recursion comparison and prints its report line.
pub fn cmd_oracle_check(
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<oracle::OracleCheckReport, CliError> {
    let report =
        oracle::run_check(n_max, trials, seed).map_err(|e| CliError::Config(e.to_string()))?;
    println!("{report}");
    if report.passed {
        Ok(report)
    } else {
        Err(CliError::OracleFailed(format!(
            "max deviation {:e} exceeds {:e}",
            report.max_deviation, report.tolerance
        )))
    }
}
