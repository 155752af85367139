//! Command-line front end for hypinfl: expression parsing, configuration
//! and the subcommands behind the `hypinfl` binary.

pub mod commands;
pub mod config;
pub mod expr;

pub use commands::{run, Command, Outcome};
pub use config::RunConfig;
pub use expr::{parse_poly, PolyExpr};
