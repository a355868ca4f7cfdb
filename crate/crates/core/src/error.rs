use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid sensor spec: {0}")]
    InvalidSensorSpec(String),

    #[error("invalid attack plan: {0}")]
    InvalidAttackPlan(String),

    #[error("invalid run config: {0}")]
    InvalidRunConfig(String),

    #[error("results contain no runs for hypothesis {0}")]
    MissingHypothesis(&'static str),

    #[error("invalid metric parameter: {0}")]
    InvalidMetricParameter(String),

    #[error("inconsistent reports: {0}")]
    InconsistentReports(String),

    #[error("oracle check: {0}")]
    OracleCheck(String),
}
