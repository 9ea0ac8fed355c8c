//! Command-line front end: input loading, machine-readable reports and SVG
//! drawings of real arrangements.

pub mod commands;
pub mod input;
pub mod render;
pub mod report;

pub use commands::{run, Cli};
