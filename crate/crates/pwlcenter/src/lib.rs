//! File formats and command implementations behind the `pwlcenter` binary.
//!
//! Coefficient files hold `{"a": trig, "b": trig}` and witness files hold
//! `{"p": [..], "q": [..], "h": trig}`, where a trig object is
//! `{"a0": r, "cos": [..], "sin": [..]}` with arrays indexed from `k = 1`.

pub mod commands;
pub mod error;
pub mod formats;

pub use commands::{cmd_analyze, cmd_construct, cmd_decompose, Command, RunConfig};
pub use error::CliError;
