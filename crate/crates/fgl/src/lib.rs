//! File formats, verification suites and the command-line interface for
//! the `fgl-core` analysis engine.

pub mod cli;
pub mod formats;
pub mod suites;
