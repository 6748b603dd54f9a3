//! Random instances, brute-force oracles, experiment sweeps and reports for
//! the bpb correctors.

pub mod error;
pub mod experiment;
pub mod generate;
pub mod oracle;
pub mod report;
pub mod verify;

pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, ExperimentConfig, Report, ReportRow};
pub use generate::{gen_instance, Instance};
pub use oracle::{brute_force_norm, brute_force_radius, DEFAULT_GRID_DENSITY};
pub use report::{emit_plotdata, emit_report, Format};
