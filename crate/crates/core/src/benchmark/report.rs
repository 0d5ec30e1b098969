use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub algorithm: String,
    pub params: String,
    pub max_mean_error: Option<f64>,
    pub max_sd_error: Option<f64>,
    pub wall_time_s: f64,
    /// Set when the algorithm failed; both errors are then absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

pub const CSV_HEADER: [&str; 5] = ["algorithm", "params", "max_mean_error", "max_sd_error", "wall_time_s"];

fn cell(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl BenchReport {
    pub fn all_completed(&self) -> bool {
        self.rows.iter().all(|r| r.error.is_none())
    }

    /// Failed rows leave both error cells empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.rows {
            w.write_record([r.algorithm.clone(), r.params.clone(), cell(r.max_mean_error), cell(r.max_sd_error), r.wall_time_s.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn write_markdown<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "| Algorithm | Parameters | max. mean error | max. s.d. error | Time (s) |")?;
        writeln!(out, "|---|---|---|---|---|")?;
        for r in &self.rows {
            let fmt = |v: Option<f64>| v.map(|v| format!("{v:.4}")).unwrap_or_else(|| "failed".into());
            writeln!(out, "| {} | {} | {} | {} | {:.2} |", r.algorithm, r.params, fmt(r.max_mean_error), fmt(r.max_sd_error), r.wall_time_s)?;
        }
        for r in self.rows.iter().filter(|r| r.error.is_some()) {
            writeln!(out, "\n{}: {}", r.algorithm, r.error.as_deref().unwrap_or_default())?;
        }
        Ok(())
    }

    pub fn read_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
