//! Run manifests: a JSON file naming one subcommand with its inputs and
//! options, so a whole invocation can be versioned next to its data.
//!
//! ```json
//! { "command": ["cccd", "check"], "inputs": ["diagram.json"],
//!   "args": [], "seed": 7, "format": "text", "strict": false }
//! ```
//!
//! Input paths are resolved against the manifest's directory.

use std::path::Path;

use clap::Parser;
use serde::Deserialize;

use crate::args::{Cli, Command, DEFAULT_SEED};
use crate::commands::{read, Failure};

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Manifest {
    command: Vec<String>,
    #[serde(default)]
    inputs: Vec<String>,
    #[serde(default)]
    args: Vec<String>,
    seed: Option<u64>,
    format: Option<String>,
    #[serde(default)]
    strict: bool,
}

/// Parses the manifest into the invocation it describes.
pub fn run(path: &Path) -> Result<Cli, Failure> {
    let m: Manifest = tqrf_core::formats::from_json(&read(path)?)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    if m.command.first().map(String::as_str) == Some("run") {
        return Err(Failure::Parse("manifests cannot run other manifests".into()));
    }
    let dir = path.parent().unwrap_or(Path::new("."));
    let mut argv = vec!["tqrf".to_string()];
    argv.extend(m.command);
    argv.extend(m.inputs.iter().map(|i| dir.join(i).display().to_string()));
    argv.extend(m.args);
    argv.extend(["--seed".to_string(), m.seed.unwrap_or(DEFAULT_SEED).to_string()]);
    argv.extend(["--format".to_string(), m.format.unwrap_or_else(|| "json".into())]);
    if m.strict {
        argv.push("--strict".into());
    }
    let cli = Cli::try_parse_from(&argv).map_err(|e| Failure::Parse(format!("{}: {}", path.display(), e.to_string().trim())))?;
    debug_assert!(!matches!(cli.command, Command::Run { .. }));
    Ok(cli)
}
