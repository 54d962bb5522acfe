use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::Result;
use crate::plot::{Plot, write_svg};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

/// A CSV table. Cells are kept as the exact strings that get written, so a
/// table read back from disk compares equal to the one in memory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        assert_eq!(row.len(), self.header.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(self.file_name());
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(path)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut r = csv::Reader::from_path(path)?;
        let header = r.headers()?.iter().map(String::from).collect();
        let rows = r.records().map(|rec| rec.map(|x| x.iter().map(String::from).collect())).collect::<std::result::Result<_, _>>()?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(Self { name, header, rows })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub verdict: bool,
    pub checks: Vec<Check>,
    pub stats: BTreeMap<String, f64>,
    #[serde(skip)]
    pub tables: Vec<Table>,
    #[serde(skip)]
    pub plots: Vec<Plot>,
    pub table_files: Vec<String>,
    pub plot_files: Vec<String>,
    pub notes: Vec<String>,
    pub runtime_seconds: f64,
    pub config: BTreeMap<String, String>,
}

impl Report {
    pub fn new(experiment: &str, config: &Config) -> Self {
        Self {
            experiment: experiment.into(),
            verdict: true,
            checks: Vec::new(),
            stats: BTreeMap::new(),
            tables: Vec::new(),
            plots: Vec::new(),
            table_files: Vec::new(),
            plot_files: Vec::new(),
            notes: Vec::new(),
            runtime_seconds: 0.0,
            config: config.entries().clone(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, value: f64, threshold: f64, detail: impl Into<String>) -> bool {
        self.verdict &= passed;
        self.checks.push(Check { name: name.into(), passed, value, threshold, detail: detail.into() });
        passed
    }

    pub fn stat(&mut self, name: impl Into<String>, value: f64) {
        self.stats.insert(name.into(), value);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn table(&mut self, t: Table) {
        self.table_files.push(t.file_name());
        self.tables.push(t);
    }

    pub fn plot(&mut self, p: Plot) {
        self.plot_files.push(p.file_name());
        self.plots.push(p);
    }

    pub fn find(&self, check: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == check)
    }

    pub fn stat_value(&self, name: &str) -> Option<f64> {
        self.stats.get(name).copied()
    }
}

/// Writes report.json plus every table and plot into `dir`.
pub fn emit_report(report: &Report, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for t in &report.tables {
        t.write(dir)?;
    }
    for p in &report.plots {
        write_svg(p, &dir.join(p.file_name()))?;
    }
    let json = serde_json::to_string_pretty(report)?;
    std::fs::write(dir.join("report.json"), json + "\n")?;
    Ok(())
}
