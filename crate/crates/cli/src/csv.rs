//! CSV output: `# key=value` header block, one column header row, data rows.
//! Numbers carry 12 significant digits in scientific notation.

use sha2::{Digest, Sha256};

use driven_cp_core::params::SI;

pub const FORMAT_VERSION: &str = "1";

/// `1.23456789012e-7` style, independent of locale.
pub fn num(x: f64) -> String {
    // No "-0" in the output.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, Default)]
pub struct CsvDoc {
    meta: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvDoc {
    /// Header with format version, command, config hash and constants.
    pub fn new(command: &str, canonical_config: &str) -> Self {
        let mut doc = Self::default();
        doc.meta("format", FORMAT_VERSION);
        doc.meta("command", command);
        doc.meta("config_sha256", &sha256_hex(canonical_config));
        for line in canonical_config.lines() {
            if let Some((k, v)) = line.split_once('=') {
                doc.meta(&format!("config.{k}"), v);
            }
        }
        doc.meta("const.c", &num(SI.c));
        doc.meta("const.hbar", &num(SI.hbar));
        doc.meta("const.eps0", &num(SI.eps0));
        doc.meta("const.mu0", &num(SI.mu0));
        doc
    }

    pub fn meta(&mut self, key: &str, value: &str) {
        // Keep one physical line per entry.
        let value = value.replace(['\n', '\r'], " ");
        self.meta.push((key.to_string(), value));
    }

    pub fn columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.columns.len());
        self.rows.push(fields);
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}
