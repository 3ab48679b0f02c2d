use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::fixedpoint::{Certificate, PicardReport};
use crate::kernels::ValidationReport;
use crate::norms::NormReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RunStatus {
    Certified,
    Uncertified,
    Failed,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub setup_seconds: f64,
    pub solve_seconds: f64,
    pub output_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialNorms {
    pub l2: f64,
    pub h2: f64,
}

/// Self-contained record of one batch run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub version: String,
    pub command: String,
    pub status: RunStatus,
    pub message: Option<String>,
    pub certificate: Option<Certificate>,
    pub kernels: Option<ValidationReport>,
    pub initial: Option<InitialNorms>,
    /// One entry per window.
    pub picard: Vec<PicardReport>,
    pub norms: Option<NormReport>,
    pub outputs: Vec<String>,
    pub timings: Timings,
    pub config: RunConfig,
}

impl SolveReport {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            status: RunStatus::Failed,
            message: None,
            certificate: None,
            kernels: None,
            initial: None,
            picard: Vec::new(),
            norms: None,
            outputs: Vec::new(),
            timings: Timings::default(),
            config,
        }
    }
}
