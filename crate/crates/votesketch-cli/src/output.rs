//! CSV tables, generated files and the JSON sidecar describing how they were made.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ExperimentConfig;

/// Version of the CSV column layout, recorded in every sidecar.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

/// What a pipeline produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Table(Table),
    /// A generated vote, item, ranking file.
    File(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: Body,
    /// Pipeline-specific facts for the sidecar (certificates, padding, constants).
    pub meta: Value,
}

impl Output {
    pub fn table(table: Table) -> Self {
        Output { body: Body::Table(table), meta: json!({}) }
    }

    pub fn text(&self) -> anyhow::Result<String> {
        match &self.body {
            Body::Table(t) => t.to_csv(),
            Body::File(s) => Ok(s.clone()),
        }
    }
}

#[derive(Serialize)]
struct Sidecar<'a> {
    schema_version: u32,
    config: &'a ExperimentConfig,
    meta: &'a Value,
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Writes the output to `--out` (plus sidecar) or to stdout.
pub fn emit(cfg: &ExperimentConfig, output: &Output) -> anyhow::Result<()> {
    let text = output.text()?;
    match &cfg.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            let side = Sidecar { schema_version: SCHEMA_VERSION, config: cfg, meta: &output.meta };
            let side_path = sidecar_path(path);
            std::fs::write(&side_path, serde_json::to_string_pretty(&side)? + "\n")
                .with_context(|| format!("writing {}", side_path.display()))?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
