//! Metrics CSV files.
//!
//! Every file starts with a `# schema: <id>` comment line followed by a
//! header row. Missing values are empty fields.

use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const METRICS_SCHEMA: &str = "psyco-metrics/1";
pub const AGGREGATE_SCHEMA: &str = "psyco-aggregate/1";

/// Episodes in the rolling window behind the `*_100` columns.
pub const ROLLING_WINDOW: usize = 100;

/// One generation of one repetition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub repetition: u32,
    pub generation: u64,
    /// Training episodes completed, including this generation.
    pub episodes: u64,
    pub mean_return: f64,
    pub mean_cost: f64,
    pub s_gen: u64,
    /// Mean return of this generation's satisfying episodes.
    pub return_sat_gen: Option<f64>,
    /// Mean return of this generation's violating episodes.
    pub return_viol_gen: Option<f64>,
    pub sat_proportion_100: f64,
    pub return_sat_100: Option<f64>,
    pub return_viol_100: Option<f64>,
    pub cost_sat_100: Option<f64>,
    pub cost_viol_100: Option<f64>,
    pub s_total: u64,
    pub v_total: u64,
    pub c_sat: f64,
    pub lambda: f64,
    pub verify_outcome: Option<String>,
    pub verify_c_sat: Option<f64>,
    pub verify_episodes: Option<u64>,
}

impl MetricsRow {
    pub fn verify_satisfied(&self) -> Option<f64> {
        self.verify_outcome
            .as_deref()
            .map(|o| if o == "satisfied" { 1.0 } else { 0.0 })
    }
}

/// Columns averaged across repetitions in the aggregate file.
pub const AGGREGATED: [&str; 11] = [
    "mean_return",
    "mean_cost",
    "sat_proportion_100",
    "return_sat_100",
    "return_viol_100",
    "cost_sat_100",
    "cost_viol_100",
    "c_sat",
    "lambda",
    "verify_c_sat",
    "verify_satisfied",
];

fn aggregated_value(row: &MetricsRow, column: &str) -> Option<f64> {
    match column {
        "mean_return" => Some(row.mean_return),
        "mean_cost" => Some(row.mean_cost),
        "sat_proportion_100" => Some(row.sat_proportion_100),
        "return_sat_100" => row.return_sat_100,
        "return_viol_100" => row.return_viol_100,
        "cost_sat_100" => row.cost_sat_100,
        "cost_viol_100" => row.cost_viol_100,
        "c_sat" => Some(row.c_sat),
        "lambda" => Some(row.lambda),
        "verify_c_sat" => row.verify_c_sat,
        "verify_satisfied" => row.verify_satisfied(),
        _ => unreachable!("not an aggregated column: {column}"),
    }
}

/// Return and cost of the most recent episodes.
#[derive(Debug, Clone)]
pub struct RollingWindow {
    capacity: usize,
    episodes: VecDeque<(f64, f64)>,
}

impl RollingWindow {
    pub fn new(capacity: usize) -> Self {
        RollingWindow {
            capacity,
            episodes: VecDeque::with_capacity(capacity + 1),
        }
    }

    pub fn push(&mut self, ret: f64, cost: f64) {
        self.episodes.push_back((ret, cost));
        if self.episodes.len() > self.capacity {
            self.episodes.pop_front();
        }
    }

    pub fn sat_proportion(&self) -> f64 {
        let sat = self.episodes.iter().filter(|(_, c)| *c == 0.0).count();
        sat as f64 / self.episodes.len().max(1) as f64
    }

    /// Means of return and cost over the satisfying (`true`) or violating
    /// episodes in the window.
    pub fn split_means(&self, satisfied: bool) -> (Option<f64>, Option<f64>) {
        let (mut n, mut r, mut c) = (0usize, 0.0, 0.0);
        for (ret, cost) in &self.episodes {
            if (*cost == 0.0) == satisfied {
                n += 1;
                r += ret;
                c += cost;
            }
        }
        if n == 0 {
            (None, None)
        } else {
            (Some(r / n as f64), Some(c / n as f64))
        }
    }
}

fn write_schema(path: &Path, schema: &str) -> Result<File> {
    let mut file = File::create(path).map_err(|e| Error::io(path, e))?;
    writeln!(file, "# schema: {schema}").map_err(|e| Error::io(path, e))?;
    Ok(file)
}

fn check_schema(path: &Path, schema: &str) -> Result<()> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut first = String::new();
    BufReader::new(file)
        .read_line(&mut first)
        .map_err(|e| Error::io(path, e))?;
    let found = first.trim_end().strip_prefix("# schema: ");
    if found != Some(schema) {
        return Err(Error::Schema(format!(
            "{}: expected `# schema: {schema}` on the first line, found `{}`",
            path.display(),
            first.trim_end()
        )));
    }
    Ok(())
}

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file))
}

pub fn write_metrics(path: &Path, rows: &[MetricsRow]) -> Result<()> {
    let file = write_schema(path, METRICS_SCHEMA)?;
    let mut w = csv::Writer::from_writer(file);
    if rows.is_empty() {
        w.write_record(HEADER)?;
    }
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

const HEADER: [&str; 20] = [
    "repetition",
    "generation",
    "episodes",
    "mean_return",
    "mean_cost",
    "s_gen",
    "return_sat_gen",
    "return_viol_gen",
    "sat_proportion_100",
    "return_sat_100",
    "return_viol_100",
    "cost_sat_100",
    "cost_viol_100",
    "s_total",
    "v_total",
    "c_sat",
    "lambda",
    "verify_outcome",
    "verify_c_sat",
    "verify_episodes",
];

pub fn read_metrics(path: &Path) -> Result<Vec<MetricsRow>> {
    check_schema(path, METRICS_SCHEMA)?;
    reader(path)?
        .deserialize()
        .map(|r| r.map_err(|e| Error::Schema(format!("{}: {e}", path.display()))))
        .collect()
}

/// Per-generation mean and population standard deviation across
/// repetitions; values absent in some repetitions are averaged over the
/// repetitions that have them.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub generation: u64,
    pub episodes: u64,
    pub repetitions: usize,
    /// `(mean, std)` per entry of [`AGGREGATED`].
    pub values: Vec<Option<(f64, f64)>>,
}

pub fn aggregate(runs: &[Vec<MetricsRow>]) -> Result<Vec<AggregateRow>> {
    let Some(first) = runs.first() else {
        return Ok(Vec::new());
    };
    if runs.iter().any(|r| r.len() != first.len()) {
        return Err(Error::Schema(
            "repetitions differ in their number of generations".into(),
        ));
    }
    let mut out = Vec::with_capacity(first.len());
    for (i, head) in first.iter().enumerate() {
        let rows: Vec<&MetricsRow> = runs.iter().map(|r| &r[i]).collect();
        if rows
            .iter()
            .any(|r| r.generation != head.generation || r.episodes != head.episodes)
        {
            return Err(Error::Schema(format!("repetitions disagree at row {i}")));
        }
        let values = AGGREGATED
            .iter()
            .map(|col| {
                let xs: Vec<f64> = rows.iter().filter_map(|r| aggregated_value(r, col)).collect();
                if xs.is_empty() {
                    return None;
                }
                let n = xs.len() as f64;
                let mean = xs.iter().sum::<f64>() / n;
                let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
                Some((mean, var.sqrt()))
            })
            .collect();
        out.push(AggregateRow {
            generation: head.generation,
            episodes: head.episodes,
            repetitions: rows.len(),
            values,
        });
    }
    Ok(out)
}

pub fn write_aggregate(path: &Path, rows: &[AggregateRow]) -> Result<()> {
    let file = write_schema(path, AGGREGATE_SCHEMA)?;
    let mut w = csv::Writer::from_writer(file);
    let mut header = vec!["generation".to_string(), "episodes".into(), "repetitions".into()];
    for col in AGGREGATED {
        header.push(format!("{col}_mean"));
        header.push(format!("{col}_std"));
    }
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![
            row.generation.to_string(),
            row.episodes.to_string(),
            row.repetitions.to_string(),
        ];
        for v in &row.values {
            match v {
                Some((m, s)) => {
                    record.push(m.to_string());
                    record.push(s.to_string());
                }
                None => record.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&record)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// A numeric CSV read by column name; empty fields are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    /// Reads any file carrying a `# schema:` line; non-numeric fields are `None`.
    pub fn read(path: &Path) -> Result<Self> {
        let mut r = reader(path)?;
        let headers: Vec<String> = r
            .headers()
            .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?
            .iter()
            .map(str::to_string)
            .collect();
        if headers.iter().all(|h| h.is_empty()) {
            return Err(Error::Schema(format!("{}: no header row", path.display())));
        }
        let mut rows = Vec::new();
        for record in r.records() {
            let record = record.map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
            rows.push(record.iter().map(|f| f.parse::<f64>().ok()).collect());
        }
        Ok(Table { headers, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Schema(format!("missing column `{name}`")))
    }
}
