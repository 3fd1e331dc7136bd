//! Optional `key = value` config files.
//!
//! Keys are long flag names without the dashes (`gamma = 2`,
//! `gnp = 10 0.5`, `include-omega-theta = true`). Each entry becomes extra
//! arguments appended to the command line unless that flag is already
//! given there; a graph source given on the command line overrides every
//! graph source in the file. Blank lines and lines starting with `#` are
//! ignored.

use std::ffi::OsString;
use std::path::Path;

use crate::CliError;

const GRAPH_SOURCES: [&str; 6] = ["gnp", "gnm", "gnm-equal-n", "spider", "edgeless", "graph"];
const SWITCHES: [&str; 5] = ["include-omega-theta", "timing", "check-doubling", "svg", "dump-basis"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub values: Vec<String>,
}

pub fn parse_config(text: &str) -> Result<Vec<Entry>, CliError> {
    let mut entries = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("config line {}: expected key = value", no + 1)))?;
        let key = key.trim().trim_start_matches("--").to_string();
        if key.is_empty() || key == "config" {
            return Err(CliError::Parse(format!("config line {}: invalid key", no + 1)));
        }
        entries.push(Entry {
            key,
            values: value.split_whitespace().map(str::to_string).collect(),
        });
    }
    Ok(entries)
}

fn flag_present(args: &[OsString], key: &str) -> bool {
    let long = format!("--{key}");
    let with_eq = format!("--{key}=");
    args.iter().any(|a| {
        a.to_str()
            .is_some_and(|s| s == long || s.starts_with(&with_eq))
    })
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Appends the entries of the file named by `--config`, if any.
pub fn merge_config_args(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let entries = parse_config(&text)?;
    let cli_has_source = GRAPH_SOURCES.iter().any(|k| flag_present(&args, k));
    let mut merged = args.clone();
    for e in entries {
        if flag_present(&args, &e.key) || (cli_has_source && GRAPH_SOURCES.contains(&e.key.as_str())) {
            continue;
        }
        if SWITCHES.contains(&e.key.as_str()) {
            match e.values.as_slice() {
                [v] if v == "true" => merged.push(format!("--{}", e.key).into()),
                [v] if v == "false" => {}
                _ => return Err(CliError::Parse(format!("config key {} expects true or false", e.key))),
            }
            continue;
        }
        merged.push(format!("--{}", e.key).into());
        merged.extend(e.values.into_iter().map(OsString::from));
    }
    Ok(merged)
}
