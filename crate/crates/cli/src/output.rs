use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;
use crate::{OutputArgs, OutputFormat};

/// Output format for a command, rejecting formats the command cannot emit.
pub(crate) fn format(
    args: &OutputArgs,
    default: OutputFormat,
    allowed: &[OutputFormat],
    command: &str,
) -> Result<OutputFormat, CliError> {
    let f = args.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "`{command}` cannot write {} output",
            f.extension()
        )))
    }
}

/// Writes `contents` to `dir/name` when a directory is configured, otherwise
/// to `stdout`.
pub(crate) fn emit(
    args: &OutputArgs,
    name: &str,
    contents: &[u8],
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match &args.out_dir {
        Some(dir) => write_file(dir, name, contents),
        None => stdout
            .write_all(contents)
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

pub(crate) fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))
}

pub(crate) fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("reports serialize");
    s.push(b'\n');
    s
}

/// CSV text from a header and rows of already formatted cells.
pub(crate) fn csv<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(row).expect("write to memory");
    }
    w.into_inner().expect("write to memory")
}

pub(crate) fn cell<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(String::new, |x| x.to_string())
}
