//! CSV and JSON artifacts, named `{digest}_{seed}`.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Experiment, Failure, Histogram, McResult};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    /// `{stem}.hist.csv`: bin_left,bin_right,count
    HistogramCsv,
    /// `{stem}.csv`: sample_index,value
    RawCsv,
    /// `{stem}.json`: experiment, seed, histogram, failures
    Json,
}

/// Everything about a run except the raw samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub digest: String,
    pub seed: u64,
    pub experiment: Experiment,
    pub samples_ok: usize,
    pub failures: Vec<Failure>,
    pub histogram: Histogram,
}

#[derive(Serialize, Deserialize)]
struct HistRow {
    bin_left: f64,
    bin_right: f64,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct RawRow {
    sample_index: usize,
    value: f64,
}

pub fn write_histogram_csv(h: &Histogram, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    for (k, c) in h.counts.iter().enumerate() {
        w.serialize(HistRow {
            bin_left: h.edges[k],
            bin_right: h.edges[k + 1],
            count: *c,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Edges and counts; the remaining histogram fields live in the sidecar.
pub fn read_histogram_csv(path: &Path) -> Result<(Vec<f64>, Vec<u64>)> {
    let mut r = csv::Reader::from_path(path)?;
    let mut edges = Vec::new();
    let mut counts = Vec::new();
    for row in r.deserialize() {
        let row: HistRow = row?;
        if edges.is_empty() {
            edges.push(row.bin_left);
        } else if *edges.last().unwrap() != row.bin_left {
            return Err(Error::Shape(format!("gap in histogram bins at {}", row.bin_left)));
        }
        edges.push(row.bin_right);
        counts.push(row.count);
    }
    Ok((edges, counts))
}

pub fn write_raw_csv(raw: &[(usize, f64)], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    for &(sample_index, value) in raw {
        w.serialize(RawRow { sample_index, value })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_raw_csv(path: &Path) -> Result<Vec<(usize, f64)>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize()
        .map(|row| {
            let row: RawRow = row?;
            Ok((row.sample_index, row.value))
        })
        .collect()
}

pub fn write_sidecar(s: &Sidecar, path: &Path) -> Result<()> {
    serde_json::to_writer_pretty(BufWriter::new(File::create(path)?), s)?;
    Ok(())
}

pub fn read_sidecar(path: &Path) -> Result<Sidecar> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

/// Writes one artifact for `result` into `dir` and returns its path.
pub fn export(result: &McResult, dir: &Path, format: ExportFormat) -> Result<PathBuf> {
    let stem = format!("{}_{}", result.experiment.digest(), result.experiment.seed);
    match format {
        ExportFormat::HistogramCsv => {
            let p = dir.join(format!("{stem}.hist.csv"));
            write_histogram_csv(&result.histogram, &p)?;
            Ok(p)
        }
        ExportFormat::RawCsv => {
            let p = dir.join(format!("{stem}.csv"));
            write_raw_csv(&result.raw, &p)?;
            Ok(p)
        }
        ExportFormat::Json => {
            let p = dir.join(format!("{stem}.json"));
            write_sidecar(
                &Sidecar {
                    digest: result.experiment.digest(),
                    seed: result.experiment.seed,
                    experiment: result.experiment.clone(),
                    samples_ok: result.raw.len(),
                    failures: result.failures.clone(),
                    histogram: result.histogram.clone(),
                },
                &p,
            )?;
            Ok(p)
        }
    }
}
