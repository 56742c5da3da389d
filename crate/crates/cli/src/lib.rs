//! Command-line front end: curve and family files, JSON reports and the
//! sampling experiment.

pub mod commands;
pub mod error;
pub mod experiment;
pub mod input;
pub mod polyparse;
pub mod report;

pub use commands::{Outcome, RunConfig};
pub use error::CliError;

/// Environment variable selecting the size of the modular primes.
pub const PRIME_BITS_VAR: &str = "CURVELAB_PRIME_BITS";

/// Exit status when every check passed.
pub const EXIT_PASS: u8 = 0;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: u8 = 1;
/// Exit status when a check failed.
pub const EXIT_FAIL: u8 = 2;
