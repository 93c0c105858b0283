//! Merging of a JSON config file into the argument list.
//!
//! Keys use the long flag names (`"sigma-true": 0.2`). Values from the file
//! are inserted right after the subcommand so that flags given on the command
//! line come later and win.

use std::ffi::OsString;
use std::path::PathBuf;

use serde_json::Value;

use crate::error::{CliError, CliResult};

fn config_path(args: &[OsString]) -> CliResult<Option<PathBuf>> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return match it.next() {
                Some(p) => Ok(Some(PathBuf::from(p))),
                None => Err(CliError::usage("--config needs a file path")),
            };
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Ok(Some(PathBuf::from(p)));
        }
    }
    Ok(None)
}

fn scalar(v: &Value) -> CliResult<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::usage(format!("unsupported config value {v}"))),
    }
}

/// Flag tokens for one config object.
pub fn config_tokens(config: &Value) -> CliResult<Vec<OsString>> {
    let obj = config
        .as_object()
        .ok_or_else(|| CliError::usage("config file must hold a JSON object"))?;
    let mut out = Vec::new();
    for (key, value) in obj {
        if key == "config" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let joined = items.iter().map(scalar).collect::<CliResult<Vec<_>>>()?.join(",");
                out.push(flag.into());
                out.push(joined.into());
            }
            other => {
                out.push(flag.into());
                out.push(scalar(other)?.into());
            }
        }
    }
    Ok(out)
}

/// Returns `args` with the config file's flags spliced in after the
/// subcommand name.
pub fn expand(args: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    let tokens = config_tokens(&value)?;
    // Program name, then the first non-flag token is the subcommand.
    let sub = args.iter().skip(1).position(|a| !a.to_string_lossy().starts_with('-'));
    let Some(sub) = sub.map(|p| p + 1) else {
        return Ok(args);
    };
    let mut out = args[..=sub].to_vec();
    out.extend(tokens);
    out.extend_from_slice(&args[sub + 1..]);
    Ok(out)
}
