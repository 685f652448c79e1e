use std::path::PathBuf;

use serde::Serialize;

use crate::args::Command;

/// Provenance record written next to every output.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub command_line: Vec<String>,
    pub tool_version: &'static str,
    pub seeds: Vec<u64>,
    pub threads: usize,
    pub parallel: bool,
    pub started_unix_seconds: u64,
    pub wall_time_seconds: f64,
    pub output: Option<PathBuf>,
    pub side_files: Vec<PathBuf>,
    pub strict: bool,
    pub verdict_ok: bool,
    pub config: &'a Command,
}
