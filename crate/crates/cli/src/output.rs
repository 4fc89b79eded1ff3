use std::fs;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::{Command, OutputArgs};
use crate::CliResult;

/// Result of one command, already formatted.
pub struct Rendered {
    pub name: &'static str,
    pub body: String,
    /// Additional files as (suffix, contents), written next to the main one.
    pub extra: Vec<(String, String)>,
}

impl Rendered {
    pub fn new(name: &'static str, body: String) -> Rendered {
        Rendered {
            name,
            body,
            extra: Vec::new(),
        }
    }
}

/// Everything needed to replay a run.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    /// Worker threads actually used.
    pub workers: usize,
    pub args: serde_json::Value,
}

impl RunManifest {
    pub fn new(command: &Command) -> RunManifest {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.name(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            workers: command.sampling().workers(),
            args: serde_json::to_value(command).unwrap_or(serde_json::Value::Null),
        }
    }
}

pub fn emit(rendered: &Rendered, manifest: &RunManifest, out: &OutputArgs, stdout: &mut dyn Write) -> CliResult<()> {
    fs::create_dir_all(&out.out)?;
    let stem = out.out.join(rendered.name);
    fs::write(stem.with_extension(out.format.extension()), &rendered.body)?;
    for (suffix, body) in &rendered.extra {
        fs::write(out.out.join(format!("{}.{suffix}", rendered.name)), body)?;
    }
    let mut json = serde_json::to_string_pretty(manifest)?;
    json.push('\n');
    fs::write(out.out.join(format!("{}.manifest.json", rendered.name)), json)?;
    stdout.write_all(rendered.body.as_bytes())?;
    Ok(())
}

/// Tab-separated table with a header row and LF line endings.
pub fn tsv<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|c| clean(c)).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

fn clean(cell: &str) -> String {
    cell.replace(['\t', '\n', '\r'], " ")
}

pub fn json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Marker for values that are undefined, such as correlations of constant
/// vectors.
pub const NA: &str = "NA";

pub fn opt(value: Option<f64>) -> String {
    value.map_or_else(|| NA.to_owned(), |v| v.to_string())
}
