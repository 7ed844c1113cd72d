//! Campaign runner and command-line front end for `mmimou-core`.
//!
//! * [`config_file`]: flat `key = value` scenario files and their hash.
//! * [`campaign`]: drops in parallel on a rayon pool, bit-identical for any
//!   worker count.
//! * [`output`]: results CSV, JSON manifest and text summary.
//! * [`cli`]: the `mmimou` binary.

pub mod campaign;
pub mod cli;
pub mod config_file;
pub mod error;
pub mod output;

pub use error::SimError;
