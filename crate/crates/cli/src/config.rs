//! `--config FILE` support.
//!
//! The file holds `key = value` pairs (TOML syntax) whose keys are long flag
//! names of the subcommands, e.g. `input = "dict.tsv"`, `no-stem = true` or
//! `norms = ["a.csv", "b.csv"]`. Settings are spliced into the argument list
//! right after the subcommand; a flag given on the command line replaces the
//! configured value entirely. Keys that belong to a different subcommand are
//! ignored, keys no subcommand knows are rejected.

use std::ffi::OsString;
use std::fs;

use clap::CommandFactory;

use crate::error::CliError;
use crate::Cli;

pub(crate) fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Parse {
        path: path.clone(),
        message: e.message().to_string(),
    })?;

    let command = Cli::command();
    let Some((position, sub)) = args.iter().enumerate().skip(1).find_map(|(i, a)| {
        let name = a.to_str()?;
        command.find_subcommand(name).map(|s| (i, s.clone()))
    }) else {
        // Nothing to apply the settings to; let clap report the missing
        // subcommand.
        return Ok(args);
    };

    let mut tokens = Vec::new();
    for (key, value) in &table {
        let key = key.replace('_', "-");
        if key == "config" {
            return Err(CliError::Usage(format!(
                "{path}: `config` cannot be nested"
            )));
        }
        let Some(arg) = sub
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
        else {
            let known = command.get_subcommands().any(|s| {
                s.get_arguments()
                    .any(|a| a.get_long() == Some(key.as_str()))
            });
            if known {
                continue;
            }
            return Err(CliError::Usage(format!("{path}: unknown setting `{key}`")));
        };
        if given_on_command_line(&args[position + 1..], &key, arg.get_short()) {
            continue;
        }
        push_value(&mut tokens, &key, value, &path)?;
    }

    let mut out = args;
    out.splice(position + 1..position + 1, tokens);
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<String> {
    let mut iter = args.iter().skip(1);
    while let Some(a) = iter.next() {
        let a = a.to_str()?;
        if a == "--config" {
            return iter.next().and_then(|p| p.to_str()).map(str::to_string);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn given_on_command_line(args: &[OsString], long: &str, short: Option<char>) -> bool {
    let flag = format!("--{long}");
    let with_value = format!("--{long}=");
    let short = short.map(|c| format!("-{c}"));
    args.iter().filter_map(|a| a.to_str()).any(|a| {
        a == flag
            || a.starts_with(&with_value)
            || short
                .as_deref()
                .is_some_and(|s| a.starts_with(s) && !a.starts_with("--"))
    })
}

fn push_value(
    tokens: &mut Vec<OsString>,
    key: &str,
    value: &toml::Value,
    path: &str,
) -> Result<(), CliError> {
    let flag = OsString::from(format!("--{key}"));
    match value {
        toml::Value::Boolean(true) => tokens.push(flag),
        toml::Value::Boolean(false) => {}
        toml::Value::String(s) => tokens.extend([flag, s.into()]),
        toml::Value::Integer(i) => tokens.extend([flag, i.to_string().into()]),
        toml::Value::Float(x) => tokens.extend([flag, x.to_string().into()]),
        toml::Value::Array(items) => {
            for item in items {
                if matches!(item, toml::Value::Array(_) | toml::Value::Table(_)) {
                    return Err(CliError::Usage(format!(
                        "{path}: `{key}` has a nested value"
                    )));
                }
                push_value(tokens, key, item, path)?;
            }
        }
        toml::Value::Datetime(_) | toml::Value::Table(_) => {
            return Err(CliError::Usage(format!(
                "{path}: `{key}` must be a string, number, boolean or list"
            )));
        }
    }
    Ok(())
}
