//! `key=value` default-flag files.
//!
//! Each key names a long flag of the chosen subcommand. Values are spliced in
//! directly after the subcommand name, so anything given on the command line
//! later in argv wins. Keys the subcommand does not know are ignored, which
//! lets one file serve every subcommand.

use std::ffi::OsString;
use std::path::Path;

use clap::Command;

use crate::error::{Error, Result};

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config line {}: expected key=value, got {line:?}",
                n + 1
            ))
        })?;
        let key = k.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(Error::Parse(format!("config line {}: empty key", n + 1)));
        }
        out.push((key.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

/// Value of `--config` in raw argv, if any.
pub fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--" {
            break;
        }
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = a.to_str().and_then(|s| s.strip_prefix("--config=")) {
            return Some(v.into());
        }
    }
    None
}

/// Splice config defaults into argv right after the subcommand name.
pub fn apply_defaults(
    cmd: &Command,
    args: Vec<OsString>,
    defaults: &[(String, String)],
) -> Vec<OsString> {
    let mut position = None;
    let mut skip_next = false;
    for (i, a) in args.iter().enumerate().skip(1) {
        if skip_next {
            skip_next = false;
            continue;
        }
        if a == "--config" {
            skip_next = true;
            continue;
        }
        if let Some(sub) = a.to_str().and_then(|s| cmd.find_subcommand(s)) {
            position = Some((i, sub));
            break;
        }
    }
    let Some((at, sub)) = position else {
        return args;
    };

    let mut injected: Vec<OsString> = Vec::new();
    for (key, value) in defaults {
        let Some(arg) = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
        else {
            continue;
        };
        let takes_value = arg.get_num_args().is_none_or(|n| n.takes_values());
        if takes_value {
            injected.push(format!("--{key}={value}").into());
        } else if matches!(value.to_ascii_lowercase().as_str(), "true" | "1" | "yes") {
            injected.push(format!("--{key}").into());
        }
    }
    let mut out = args;
    out.splice(at + 1..at + 1, injected);
    out
}
