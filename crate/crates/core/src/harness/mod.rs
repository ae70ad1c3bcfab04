//! Experiment protocol: configuration, the `run` command and the offline
//! `merge`, `metrics`, `filter` and `report` commands. The CLI is a thin
//! layer over these functions.

mod analysis;
mod config;
mod run;

pub use analysis::{
    cmd_filter, cmd_merge, cmd_metrics, cmd_report, histogram, quartiles, FilterOptions,
    FilterOutput, Histogram, Quartiles, ReportOptions,
};
pub use config::{RunConfig, RunSection};
pub use run::{cmd_run, run_algorithm_records, AlgorithmSummary, RunSummary};

use crate::Error;

/// Process exit code for an error: 3 for incompatible inputs, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Incompatible(_) => 3,
        _ => 2,
    }
}
