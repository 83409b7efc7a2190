//! Record files: CSV with a fixed header and 12-digit scientific floats, or a
//! JSON array of flat objects with the same field names.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complementarity::{ggm_bound_slack, tangle_bound_slack, ClassTag, MeasureRecord};

pub const CSV_HEADER: &str =
    "state_id,class,alpha,s_a,s_b,s_c,ggm,tangle,discord_score,c_adv,ggm_slack,tangle_slack";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` means JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// One output row: the record plus both slacks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub state_id: u64,
    pub class: ClassTag,
    pub alpha: Option<f64>,
    pub s_a: f64,
    pub s_b: f64,
    pub s_c: f64,
    pub ggm: f64,
    pub tangle: f64,
    pub discord_score: Option<f64>,
    pub c_adv: f64,
    pub ggm_slack: Option<f64>,
    pub tangle_slack: Option<f64>,
}

impl From<&MeasureRecord> for RecordRow {
    fn from(r: &MeasureRecord) -> Self {
        RecordRow {
            state_id: r.state_id,
            class: r.class_tag,
            alpha: r.alpha,
            s_a: r.s_a,
            s_b: r.s_b,
            s_c: r.s_c,
            ggm: r.ggm,
            tangle: r.tangle,
            discord_score: r.discord_score,
            c_adv: r.c_adv,
            ggm_slack: ggm_bound_slack(r).ok(),
            tangle_slack: tangle_bound_slack(r).ok(),
        }
    }
}

impl From<RecordRow> for MeasureRecord {
    fn from(r: RecordRow) -> Self {
        MeasureRecord {
            state_id: r.state_id,
            class_tag: r.class,
            alpha: r.alpha,
            s_a: r.s_a,
            s_b: r.s_b,
            s_c: r.s_c,
            ggm: r.ggm,
            tangle: r.tangle,
            discord_score: r.discord_score,
            c_adv: r.c_adv,
        }
    }
}

pub fn fmt_float(x: f64) -> String {
    format!("{x:.12e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub fn write_csv<W: Write>(mut w: W, records: &[MeasureRecord]) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        let row = RecordRow::from(r);
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            row.state_id,
            row.class,
            fmt_opt(row.alpha),
            fmt_float(row.s_a),
            fmt_float(row.s_b),
            fmt_float(row.s_c),
            fmt_float(row.ggm),
            fmt_float(row.tangle),
            fmt_opt(row.discord_score),
            fmt_float(row.c_adv),
            fmt_opt(row.ggm_slack),
            fmt_opt(row.tangle_slack),
        )?;
    }
    Ok(())
}

pub fn write_json<W: Write>(w: W, records: &[MeasureRecord]) -> Result<(), IoError> {
    let rows: Vec<RecordRow> = records.iter().map(RecordRow::from).collect();
    serde_json::to_writer_pretty(w, &rows)?;
    Ok(())
}

pub fn write_records<W: Write>(
    mut w: W,
    records: &[MeasureRecord],
    format: Format,
) -> Result<(), IoError> {
    match format {
        Format::Csv => write_csv(&mut w, records)?,
        Format::Json => {
            write_json(&mut w, records)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

/// Write through a temporary file in the target directory; nothing is left
/// behind if writing fails.
pub fn write_atomically(
    path: &Path,
    body: impl FnOnce(&mut io::BufWriter<&mut fs::File>) -> Result<(), IoError>,
) -> Result<(), IoError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = io::BufWriter::new(tmp.as_file_mut());
        body(&mut w)?;
        w.flush()?;
    }
    tmp.persist(path).map_err(|e| IoError::Io(e.error))?;
    Ok(())
}

fn parse_float(field: &str, name: &str, line: usize) -> Result<f64, IoError> {
    field.trim().parse::<f64>().map_err(|_| IoError::Malformed {
        line,
        msg: format!("bad {name} `{field}`"),
    })
}

fn parse_opt(field: &str, name: &str, line: usize) -> Result<Option<f64>, IoError> {
    if field.trim().is_empty() {
        Ok(None)
    } else {
        parse_float(field, name, line).map(Some)
    }
}

pub fn read_csv<R: io::Read>(r: R) -> Result<Vec<MeasureRecord>, IoError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(IoError::Malformed {
            line: 1,
            msg: format!("unexpected header `{}`", header.join(",")),
        });
    }
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec?;
        if rec.len() != 12 {
            return Err(IoError::Malformed {
                line,
                msg: format!("expected 12 fields, got {}", rec.len()),
            });
        }
        let state_id = rec[0]
            .trim()
            .parse::<u64>()
            .map_err(|_| IoError::Malformed {
                line,
                msg: format!("bad state_id `{}`", &rec[0]),
            })?;
        let class = rec[1]
            .trim()
            .parse::<ClassTag>()
            .map_err(|msg| IoError::Malformed { line, msg })?;
        out.push(MeasureRecord {
            state_id,
            class_tag: class,
            alpha: parse_opt(&rec[2], "alpha", line)?,
            s_a: parse_float(&rec[3], "s_a", line)?,
            s_b: parse_float(&rec[4], "s_b", line)?,
            s_c: parse_float(&rec[5], "s_c", line)?,
            ggm: parse_float(&rec[6], "ggm", line)?,
            tangle: parse_float(&rec[7], "tangle", line)?,
            discord_score: parse_opt(&rec[8], "discord_score", line)?,
            c_adv: parse_float(&rec[9], "c_adv", line)?,
        });
        // slack columns are derived; only their syntax is checked
        parse_opt(&rec[10], "ggm_slack", line)?;
        parse_opt(&rec[11], "tangle_slack", line)?;
    }
    Ok(out)
}

pub fn read_json<R: io::Read>(r: R) -> Result<Vec<MeasureRecord>, IoError> {
    let rows: Vec<RecordRow> = serde_json::from_reader(r)?;
    Ok(rows.into_iter().map(MeasureRecord::from).collect())
}

pub fn read_records(path: &Path) -> Result<Vec<MeasureRecord>, IoError> {
    let f = io::BufReader::new(fs::File::open(path)?);
    match Format::from_path(path) {
        Format::Csv => read_csv(f),
        Format::Json => read_json(f),
    }
}
