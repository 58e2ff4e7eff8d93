//! Output envelope and the json / csv / table renderers.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Tabular view of a payload, shared by the csv and table formats.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self { headers, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Result of one subcommand before rendering.
pub struct Output {
    pub command: &'static str,
    pub params: Value,
    pub payload: Value,
    pub table: Table,
    pub flags: Vec<&'static str>,
    pub exit: u8,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    params: &'a Value,
    payload: &'a Value,
    flags: &'a [&'static str],
    version: &'static str,
}

fn flag_message(flag: &str) -> &'static str {
    match flag {
        "q_le_n" => "q <= n: some types cannot occur and carry no characters",
        "even_p_unchecked" => "even q lies outside the verified setting",
        "p_divides_n" => "p divides n: special-form formulas are evaluated outside their domain",
        "not_prime_power" => "q is not a prime power: formulas are evaluated as polynomials only",
        "degenerate_n1" => "n = 1: the regular part is degenerate",
        _ => "unrecognised condition",
    }
}

fn write_table(out: &mut impl Write, table: &Table) -> io::Result<()> {
    let mut widths: Vec<usize> = table.headers.iter().map(|h| h.len()).collect();
    for row in &table.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(table.headers.clone()))?;
    let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", line(rules.iter().map(String::as_str).collect()))?;
    for row in &table.rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

pub fn render(output: &Output, format: Format) -> io::Result<()> {
    for flag in &output.flags {
        eprintln!("warning: {}", flag_message(flag));
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let envelope = Envelope {
                command: output.command,
                params: &output.params,
                payload: &output.payload,
                flags: &output.flags,
                version: env!("CARGO_PKG_VERSION"),
            };
            serde_json::to_writer(&mut out, &envelope)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            writer.write_record(&output.table.headers)?;
            for row in &output.table.rows {
                writer.write_record(row)?;
            }
            writer.flush()?;
        }
        Format::Table => write_table(&mut out, &output.table)?,
    }
    Ok(())
}
