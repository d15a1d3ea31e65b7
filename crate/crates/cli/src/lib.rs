//! Library side of the `exttype` command-line tool.

pub mod args;
pub mod commands;
pub mod output;
pub mod render;
