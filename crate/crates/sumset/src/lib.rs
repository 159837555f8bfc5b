//! Std companion to `sumset-core`: threaded search, JSON/CSV report
//! formats, and the `sumset` command line.

pub mod cli;
pub mod parallel;
pub mod schema;
