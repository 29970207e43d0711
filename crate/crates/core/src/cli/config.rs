//! Flat `key = value` config files, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use super::CliError;

/// Flags that exclude each other; a flag given on the command line hides
/// every member of its group from the config file.
const EXCLUSIVE: &[&[&str]] = &[&["p", "p-frac"], &["beta", "beta-frac"]];

/// Parses `key = value` lines. `#` starts a comment; keys are flag names
/// without the leading dashes.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        out.insert(key, value.trim().to_string());
    }
    Ok(out)
}

pub fn read(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

fn flag_name(arg: &str) -> Option<&str> {
    let body = arg.strip_prefix("--")?;
    Some(body.split('=').next().unwrap_or(body))
}

/// Removes `--config PATH` (or `--config=PATH`) from `args`, returning the path.
pub fn take_config_path(args: &mut Vec<String>) -> Result<Option<String>, CliError> {
    let Some(i) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(None);
    };
    let arg = args.remove(i);
    if let Some(path) = arg.strip_prefix("--config=") {
        return Ok(Some(path.to_string()));
    }
    if i < args.len() {
        Ok(Some(args.remove(i)))
    } else {
        Err(CliError::Usage("--config needs a path".into()))
    }
}

/// Inserts config entries right after the subcommand at `at`, skipping keys
/// the command line already sets. `true`/`false` values toggle switches.
pub fn inject(args: &mut Vec<String>, at: usize, entries: &BTreeMap<String, String>) {
    let given: Vec<&str> = args.iter().filter_map(|a| flag_name(a)).collect();
    let hidden = |key: &str| {
        given.contains(&key)
            || EXCLUSIVE
                .iter()
                .any(|g| g.contains(&key) && g.iter().any(|k| given.contains(k)))
    };
    let mut extra = Vec::new();
    for (key, value) in entries {
        if hidden(key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => {
                extra.push(format!("--{key}"));
                extra.push(value.clone());
            }
        }
    }
    args.splice(at + 1..at + 1, extra);
}
