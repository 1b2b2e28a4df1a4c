//! CSV tables with a metadata sidecar.
//!
//! Reals are written with 17 significant digits in scientific notation so a
//! round trip through any IEEE-754 parser is exact.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

/// Formats a real with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

pub fn opt_int<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Clone, Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(w.into_inner().map_err(|e| e.into_error())?)
    }
}

pub fn meta_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Run metadata written next to every CSV.
#[derive(Clone, Debug, Serialize)]
pub struct RunMeta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub params: Value,
    pub columns: Vec<&'static str>,
    pub rows: usize,
    pub wall_time_s: f64,
    pub notes: Vec<String>,
}

/// Shared context of one invocation.
pub struct Run {
    pub command: String,
    pub seed: Option<u64>,
    pub params: Value,
    pub notes: Vec<String>,
    started: Instant,
}

impl Run {
    pub fn new(command: &str, seed: Option<u64>, params: Value) -> Self {
        Self {
            command: command.to_owned(),
            seed,
            params,
            notes: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Writes `path` and `<path>.meta.json`.
    pub fn write(&self, path: &Path, table: &Table) -> Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        std::fs::write(path, table.to_csv()?)
            .with_context(|| format!("writing {}", path.display()))?;
        let meta = RunMeta {
            tool: "pucb",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command.clone(),
            seed: self.seed,
            params: self.params.clone(),
            columns: table.header.clone(),
            rows: table.rows.len(),
            wall_time_s: self.started.elapsed().as_secs_f64(),
            notes: self.notes.clone(),
        };
        std::fs::write(meta_path(path), serde_json::to_string_pretty(&meta)? + "\n")?;
        Ok(())
    }

    /// Writes to `path`, or prints the CSV on stdout when there is none.
    pub fn emit(&self, path: Option<&Path>, table: &Table) -> Result<()> {
        match path {
            Some(p) => self.write(p, table),
            None => {
                print!("{}", String::from_utf8(table.to_csv()?)?);
                Ok(())
            }
        }
    }
}
