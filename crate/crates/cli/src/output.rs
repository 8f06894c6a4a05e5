use std::io::Write;

use primsum_core::roots::TableRow;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Constant,
    TableRow,
    Check,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub kind: Kind,
    pub name: String,
    pub k: Option<u32>,
    pub value: String,
    pub err_bound: String,
    pub status: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub precision: u32,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    pub records: Vec<OutputRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

pub fn format_err(err: f64) -> String {
    format!("{err:.2e}")
}

/// One record per cell, ordered by k then column.
pub fn table_records(rows: &[TableRow], digits: usize) -> Vec<OutputRecord> {
    rows.iter()
        .flat_map(|row| {
            TableRow::COLUMNS
                .iter()
                .zip(row.cells())
                .zip(row.widths)
                .map(move |((name, value), width)| OutputRecord {
                    kind: Kind::TableRow,
                    name: name.to_string(),
                    k: Some(row.k),
                    value: primsum_core::round_f64_for_display(value, digits),
                    err_bound: format_err(width),
                    status: None,
                })
        })
        .collect()
}

pub fn write_table<W: Write>(
    out: &mut W,
    doc: &Document,
    format: Format,
) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => write_json(out, doc),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(out);
            let mut header = vec!["k"];
            header.extend(TableRow::COLUMNS);
            w.write_record(&header)?;
            for chunk in doc.records.chunks(TableRow::COLUMNS.len()) {
                let mut line = vec![chunk[0].k.map(|k| k.to_string()).unwrap_or_default()];
                line.extend(chunk.iter().map(|r| r.value.clone()));
                w.write_record(&line)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            let width = doc.records.first().map_or(8, |r| r.value.len()).max(9);
            write!(out, "{:>3}", "k")?;
            for c in TableRow::COLUMNS {
                write!(out, "  {c:>width$}")?;
            }
            writeln!(out)?;
            for chunk in doc.records.chunks(TableRow::COLUMNS.len()) {
                write!(out, "{:>3}", chunk[0].k.unwrap_or(0))?;
                for r in chunk {
                    write!(out, "  {:>width$}", r.value)?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
    }
}

pub fn write_records<W: Write>(
    out: &mut W,
    doc: &Document,
    format: Format,
) -> Result<(), Box<dyn std::error::Error>> {
    match format {
        Format::Json => write_json(out, doc),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().from_writer(out);
            for r in &doc.records {
                w.serialize(r)?;
            }
            w.flush()?;
            Ok(())
        }
        Format::Text => {
            for r in &doc.records {
                let k = r.k.map(|k| format!(" k={k}")).unwrap_or_default();
                match &r.status {
                    Some(status) => writeln!(
                        out,
                        "[{status:<6}] {}{k}: {} (err {})",
                        r.name, r.value, r.err_bound
                    )?,
                    None => writeln!(out, "{}{k} = {} ± {}", r.name, r.value, r.err_bound)?,
                }
            }
            Ok(())
        }
    }
}

fn write_json<W: Write>(out: &mut W, doc: &Document) -> Result<(), Box<dyn std::error::Error>> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}
