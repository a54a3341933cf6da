use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::{Format, OutputArgs};

/// Right-aligned columns, the first column left-aligned.
pub fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..cols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(j, c)| {
                if j == 0 {
                    format!("{c:<w$}", w = width[0])
                } else {
                    format!("{c:>w$}", w = width[j])
                }
            })
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn row<T: ToString>(head: &str, values: &[T]) -> Vec<String> {
    std::iter::once(head.to_string())
        .chain(values.iter().map(ToString::to_string))
        .collect()
}

pub fn join<T: ToString>(values: &[T], sep: &str) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

/// Renders `value` in the requested format and writes it out.
pub fn emit<T: Serialize>(
    args: &OutputArgs,
    value: &T,
    csv: impl FnOnce() -> String,
    table: impl FnOnce() -> String,
) -> Result<()> {
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Csv => csv(),
        Format::Table => table(),
    };
    write_text(args.output.as_deref(), &text)
}

pub fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}
