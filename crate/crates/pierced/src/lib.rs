//! Standard-library companion to `pierced-core`: JSON formats, the
//! conjecture scan, SVG export and the `pierced` command-line tool.

pub mod analysis;
pub mod cli;
pub mod counterexample;
pub mod json;
pub mod scan;
pub mod svg;

pub use pierced_core as core;
