//! Command-line and HTTP front ends for `careerpath-core`.

pub mod cli;
pub mod response;
pub mod server;
