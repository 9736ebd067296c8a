//! Artifact reading and writing.
//!
//! Data files are deliberately timestamp-free so identical inputs produce
//! byte-identical outputs; run metadata belongs in a sidecar, not in data.
//! CSV formats here are single-purpose and tiny (one or three columns), so
//! they are parsed directly rather than through a general CSV layer.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::indices::AbsoluteIndexTrace;

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    Ok(())
}

/// Write a trace as `n,term,cumulative` CSV at full double precision.
pub fn emit_trace(trace: &AbsoluteIndexTrace, path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let mut file = fs::File::create(path)?;
    trace.write_csv(&mut file)?;
    file.flush()?;
    Ok(())
}

/// Read back a trace CSV as `(n, term, cumulative)` rows.
pub fn read_trace_csv(path: &Path) -> Result<Vec<(usize, f64, f64)>> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "n,term,cumulative" => {}
        other => {
            return Err(Error::invalid(format!(
                "{}: expected header \"n,term,cumulative\", found {:?}",
                path.display(),
                other.map(|(_, l)| l)
            )))
        }
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::invalid(format!(
                "{}:{}: expected 3 fields, found {}",
                path.display(),
                lineno + 1,
                fields.len()
            )));
        }
        let parse_err = |what: &str| {
            Error::invalid(format!(
                "{}:{}: cannot parse {}",
                path.display(),
                lineno + 1,
                what
            ))
        };
        rows.push((
            fields[0].trim().parse().map_err(|_| parse_err("index"))?,
            fields[1].trim().parse().map_err(|_| parse_err("term"))?,
            fields[2]
                .trim()
                .parse()
                .map_err(|_| parse_err("cumulative"))?,
        ));
    }
    Ok(rows)
}

/// Serialize a value as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    ensure_parent(path)?;
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::invalid(format!("{}: {}", path.display(), e)))
}

/// Write plain text (summary tables).
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    ensure_parent(path)?;
    fs::write(path, text)?;
    Ok(())
}

fn parse_data_lines<T, F>(path: &Path, mut parse: F) -> Result<Vec<T>>
where
    F: FnMut(&str) -> Option<T>,
{
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse(line) {
            Some(v) => out.push(v),
            // A non-numeric first data line is treated as a column header.
            None if out.is_empty() && i == 0 => continue,
            None => {
                return Err(Error::invalid(format!(
                    "{}:{}: cannot parse \"{}\"",
                    path.display(),
                    i + 1,
                    raw
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::invalid(format!("{}: no data rows", path.display())));
    }
    Ok(out)
}

/// Read one floating-point value per line (comments start with `#`; a
/// single leading header line is tolerated).
pub fn read_sequence_csv(path: &Path) -> Result<Vec<f64>> {
    parse_data_lines(path, |line| line.parse::<f64>().ok())
}

/// Read `t,value` pairs, one per line (same comment/header rules).
pub fn read_pairs_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    parse_data_lines(path, |line| {
        let mut fields = line.split(',');
        let t = fields.next()?.trim().parse::<f64>().ok()?;
        let v = fields.next()?.trim().parse::<f64>().ok()?;
        if fields.next().is_some() {
            return None;
        }
        Some((t, v))
    })
}
