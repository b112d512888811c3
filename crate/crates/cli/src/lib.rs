//! Command-line front end for `plexus-core`.

pub mod commands;
pub mod error;
pub mod input;
pub mod oracle;
pub mod selftest;
