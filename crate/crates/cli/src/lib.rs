//! File formats and subcommands of the `frechet-edit` tool.
//!
//! Exit codes: 0 when the answer is feasible, 1 when infeasible, 2 on usage
//! or input errors.

pub mod commands;
pub mod io;

pub use commands::{Cli, Command};
