use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use halving::halving::RunTrace;
use halving::Objective;
use serde::{Serialize, Serializer};

use crate::run::{representative, Run};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn ser_sci<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&sci(*v))
}

#[derive(Debug, Serialize)]
pub struct SummaryRow<'a> {
    pub method: &'a str,
    pub function: &'a str,
    #[serde(serialize_with = "ser_sci")]
    pub eps: f64,
    pub iterations: u32,
    pub value_calls: u64,
    pub direction_calls: u64,
    pub full_grad_calls: u64,
    #[serde(serialize_with = "ser_sci")]
    pub wall_ms: f64,
    #[serde(serialize_with = "ser_sci")]
    pub final_gap: f64,
}

impl<'a> From<&'a Run> for SummaryRow<'a> {
    fn from(r: &'a Run) -> Self {
        let c = r.solution.trace.counters;
        SummaryRow {
            method: r.method.name(),
            function: &r.function,
            eps: r.eps,
            iterations: r.solution.trace.iterations(),
            value_calls: c.value_calls,
            direction_calls: c.direction_calls,
            full_grad_calls: c.full_grad_calls,
            wall_ms: r.wall_ms,
            final_gap: r.final_gap(),
        }
    }
}

pub fn write_rows<W: Write>(w: W, rows: &[SummaryRow<'_>], header: bool) -> Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(header).from_writer(w);
    for r in rows {
        csv.serialize(r)?;
    }
    csv.flush()?;
    Ok(())
}

/// Appends to `path`, writing the header only when the file is new or empty.
pub fn append_rows(path: &Path, rows: &[SummaryRow<'_>]) -> Result<()> {
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let empty = file.metadata()?.len() == 0;
    write_rows(file, rows, empty).with_context(|| format!("writing {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()
        .with_context(|| format!("writing {}", path.display()))
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

/// Gap-vs-iteration curve: one line per logged iteration plus a final line,
/// whitespace separated for gnuplot.
pub fn write_curve(
    path: &Path,
    trace: &RunTrace<f64>,
    f: &(dyn Objective<f64> + Send + Sync),
    minimum: f64,
    final_gap: f64,
) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(
        w,
        "# iteration\tvalue_calls\tdirection_calls\tfull_grad_calls\tgap"
    )?;
    for r in &trace.records {
        let gap = f.value(representative(&r.region))? - minimum;
        let c = r.counters;
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}",
            r.index,
            c.value_calls,
            c.direction_calls,
            c.full_grad_calls,
            sci(gap)
        )?;
    }
    let c = trace.counters;
    writeln!(
        w,
        "{}\t{}\t{}\t{}\t{}",
        trace.iterations(),
        c.value_calls,
        c.direction_calls,
        c.full_grad_calls,
        sci(final_gap)
    )?;
    w.flush()
        .with_context(|| format!("writing {}", path.display()))
}
