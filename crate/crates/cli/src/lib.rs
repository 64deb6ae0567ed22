//! Experiment harness for the `hyperpin` command line tool.

pub mod bench;
pub mod commands;
pub mod config;
