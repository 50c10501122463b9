//! CSV and JSON writers. Floats use 17 significant digits so identical runs
//! produce identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::CliError;

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Label used in file names, e.g. `-1.5` or `100000000`.
pub fn lambda_label(v: f64) -> String {
    format!("{v}")
}

pub struct OutputDir {
    dir: PathBuf,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, body: String) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, body).map_err(|source| CliError::Io { path, source })?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// One header row, then one row per entry; cells are written verbatim.
    pub fn csv(
        &mut self,
        name: &str,
        header: &[&str],
        rows: &[Vec<String>],
    ) -> Result<(), CliError> {
        let mut body = header.join(",");
        body.push('\n');
        for row in rows {
            body.push_str(&row.join(","));
            body.push('\n');
        }
        self.write(name, body)
    }

    /// Equal-length float columns.
    pub fn columns(
        &mut self,
        name: &str,
        header: &[&str],
        columns: &[&[f64]],
    ) -> Result<(), CliError> {
        let n = columns.first().map_or(0, |c| c.len());
        assert!(columns.iter().all(|c| c.len() == n), "ragged columns");
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| columns.iter().map(|c| float(c[i])).collect())
            .collect();
        self.csv(name, header, &rows)
    }

    /// `<command>_summary.json` with the resolved config and the list of files.
    pub fn finish(
        mut self,
        command: &str,
        config: &RunConfig,
        results: Value,
    ) -> Result<Vec<String>, CliError> {
        #[derive(Serialize)]
        struct Summary<'a> {
            command: &'a str,
            config: &'a RunConfig,
            files: &'a [String],
            results: Value,
        }
        let name = format!("{command}_summary.json");
        let files = self.written.clone();
        let summary = Summary {
            command,
            config,
            files: &files,
            results,
        };
        let mut body = serde_json::to_string_pretty(&summary).expect("serializable summary");
        body.push('\n');
        self.write(&name, body)?;
        Ok(self.written)
    }
}

/// `NaN` and infinities become `null`.
pub fn json_float(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}
