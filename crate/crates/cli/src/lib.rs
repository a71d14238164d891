//! Command-line front end of `alphastab`: the JSON family document, SVG
//! figures and the subcommands.

pub mod commands;
pub mod document;
pub mod svg;
