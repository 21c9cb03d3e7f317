//! CSV forms of the trace and sweep tables.
//!
//! Positions are written as `"(d1;d2;...;dn)"`. Reals use Rust's shortest
//! round-trip formatting, so parsing a written file gives back identical
//! records.

use std::io::{Read, Write};

use crate::telemetry::{GenerationRecord, SweepReport, TelemetryError};

pub const TRACE_HEADER: &str = "generation,gbest_fitness,gbest_position,gbest_changed,pbest_fitness_mean,\
fitness_mean,fitness_median,fitness_stddev,velocity_update_mean_abs,harvests";

pub const SWEEP_HEADER: &str = "variable_value,seed,generations_to_first_solution";

pub fn format_position(pos: &[u64]) -> String {
    let inner: Vec<String> = pos.iter().map(u64::to_string).collect();
    format!("({})", inner.join(";"))
}

pub fn parse_position(text: &str) -> Result<Vec<u64>, TelemetryError> {
    let bad = || TelemetryError::Csv(format!("bad position {text:?}"));
    let inner = text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(';').map(|d| d.trim().parse().map_err(|_| bad())).collect()
}

pub fn write_trace_csv<W: Write>(mut out: W, records: &[GenerationRecord]) -> std::io::Result<()> {
    writeln!(out, "{TRACE_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},\"{}\",{},{},{},{},{},{},{}",
            r.generation,
            r.gbest_fitness,
            format_position(&r.gbest_position),
            r.gbest_changed,
            r.pbest_fitness_mean,
            r.fitness_mean,
            r.fitness_median,
            r.fitness_stddev,
            r.velocity_update_mean_abs,
            r.harvests
        )?;
    }
    Ok(())
}

pub fn trace_csv_string(records: &[GenerationRecord]) -> String {
    let mut buf = Vec::new();
    write_trace_csv(&mut buf, records).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, index: usize, line: u64) -> Result<T, TelemetryError> {
    let raw = row
        .get(index)
        .ok_or_else(|| TelemetryError::Csv(format!("line {line}: missing column {index}")))?;
    raw.parse()
        .map_err(|_| TelemetryError::Csv(format!("line {line}: bad value {raw:?} in column {index}")))
}

pub fn read_trace_csv<R: Read>(input: R) -> Result<Vec<GenerationRecord>, TelemetryError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers().map_err(|e| TelemetryError::Csv(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != TRACE_HEADER {
        return Err(TelemetryError::Csv("unexpected trace header".into()));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| TelemetryError::Csv(e.to_string()))?;
        let line = i as u64 + 2;
        records.push(GenerationRecord {
            generation: field(&row, 0, line)?,
            gbest_fitness: field(&row, 1, line)?,
            gbest_position: parse_position(&row[2])?,
            gbest_changed: field(&row, 3, line)?,
            pbest_fitness_mean: field(&row, 4, line)?,
            fitness_mean: field(&row, 5, line)?,
            fitness_median: field(&row, 6, line)?,
            fitness_stddev: field(&row, 7, line)?,
            velocity_update_mean_abs: field(&row, 8, line)?,
            harvests: field(&row, 9, line)?,
        });
    }
    Ok(records)
}

/// One row per run; unsolved runs are written as `-1`.
pub fn write_sweep_csv<W: Write>(mut out: W, report: &SweepReport) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for cell in &report.cells {
        for outcome in &cell.outcomes {
            let generations = outcome.generations_to_first_solution.map_or(-1, |g| g as i64);
            writeln!(out, "{},{},{}", cell.value, outcome.seed, generations)?;
        }
    }
    Ok(())
}
