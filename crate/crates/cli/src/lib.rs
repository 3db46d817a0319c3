//! Batch front-end for `conifold`: JSON job documents in, JSON reports or
//! text tables out.

pub mod descriptor;
pub mod error;
pub mod job;
pub mod run;
pub mod schema;
pub mod table;
pub mod verify;

pub use error::{CliError, ExitStatus, Result};
pub use job::{parse_input, Command, Format, JobSpec, Options};
pub use run::{run, Outcome};
pub use schema::{Report, SCHEMA};

/// Environment variable overriding the search step budget.
pub const STEP_BUDGET_ENV: &str = "CONIFOLD_STEP_BUDGET";
