//! CSV and JSON result files.
//!
//! CSV layout: one `# config: {...}` comment line holding the full
//! configuration as JSON, then a header row and one row per record. Absent
//! values (`mean_em_iterations` for non-EM detectors) are empty fields.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::experiment::BerRecord;
use crate::SimError;

pub const CSV_COLUMNS: [&str; 9] = [
    "snr_db",
    "detector",
    "T",
    "blocks",
    "total_bits",
    "bit_errors",
    "ber",
    "mean_em_iterations",
    "wall_seconds",
];

const CONFIG_PREFIX: &str = "# config: ";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, SimError> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(SimError::Config(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonResults {
    config: ExperimentConfig,
    records: Vec<BerRecord>,
}

/// Serialize records as CSV into any writer.
pub fn write_csv<W: Write>(records: &[BerRecord], config: &ExperimentConfig, mut out: W) -> Result<(), SimError> {
    writeln!(out, "{CONFIG_PREFIX}{}", serde_json::to_string(config)?)?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_results(
    records: &[BerRecord],
    config: &ExperimentConfig,
    path: &Path,
    format: Format,
) -> Result<(), SimError> {
    let io_err = |e: std::io::Error| SimError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(records, config, &mut out).map_err(|e| e.with_path(path))?,
        Format::Json => {
            let doc = JsonResults {
                config: config.clone(),
                records: records.to_vec(),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            out.write_all(b"\n").map_err(io_err)?;
        }
    }
    out.flush().map_err(io_err)
}

/// Parse CSV text written by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<(Option<ExperimentConfig>, Vec<BerRecord>), SimError> {
    let config = text
        .lines()
        .find_map(|l| l.strip_prefix(CONFIG_PREFIX))
        .map(serde_json::from_str)
        .transpose()?;
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS) {
        return Err(SimError::Config(format!(
            "unexpected CSV header: {}",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let records = reader.deserialize().collect::<Result<Vec<BerRecord>, _>>()?;
    Ok((config, records))
}

pub fn read_results_csv(path: &Path) -> Result<(Option<ExperimentConfig>, Vec<BerRecord>), SimError> {
    let text = fs::read_to_string(path).map_err(|e| SimError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_csv(&text)
}

pub fn read_results_json(path: &Path) -> Result<(ExperimentConfig, Vec<BerRecord>), SimError> {
    let text = fs::read_to_string(path).map_err(|e| SimError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let doc: JsonResults = serde_json::from_str(&text)?;
    Ok((doc.config, doc.records))
}
