//! File formats, reports and command dispatch for the `gammacx` tool.

pub mod dot;
pub mod io;
pub mod report;
pub mod run;

pub use io::InputError;
pub use run::{run_command, Command, Format, Outcome, RunConfig};
