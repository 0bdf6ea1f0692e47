//! Command implementations for the `qgk` binary. Each command returns a
//! [`Report`] whose rendering is deterministic for fixed inputs and seed.

mod commands;
mod report;
mod verify;

pub use commands::{cmd_emit_bilinear, cmd_graph_check, cmd_hull, cmd_slot, Source};
pub use report::{Format, Line, Report, Status};
pub use verify::{cmd_verify, threads_from_env, VerifyOptions, MAX_NMAX, THREADS_VAR};
