//! Library side of the `exactcat` command line tool: the diagram file
//! format and the subcommands.

pub mod commands;
pub mod format;
