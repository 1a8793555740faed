use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

/// A table of results plus a one-line summary and extra JSON fields.
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub summary: String,
    pub extra: Value,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            summary: String::new(),
            extra: Value::Null,
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub flags: Value,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub wall_time_secs: f64,
    pub outputs: Vec<OutputDigest>,
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        // shortest round-trip form, so reruns are byte-identical
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

/// Non-finite floats have no JSON form; they travel as strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        json!("nan")
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn header_lines(command: &str, flags: &Value) -> Vec<String> {
    let mut lines = vec![format!("# riemann-lab {} {command}", env!("CARGO_PKG_VERSION"))];
    if let Value::Object(map) = flags {
        for (k, v) in map {
            lines.push(format!("# {k} = {v}"));
        }
    }
    lines
}

fn csv_bytes(command: &str, flags: &Value, report: &Report) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    for line in header_lines(command, flags) {
        writeln!(buf, "{line}")?;
    }
    let mut w = csv::Writer::from_writer(buf);
    w.write_record(&report.columns)?;
    for row in &report.rows {
        w.write_record(row.iter().map(cell))?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{ext}"))
}

fn write_digest(path: &Path, bytes: &[u8]) -> std::io::Result<OutputDigest> {
    fs::write(path, bytes)?;
    Ok(OutputDigest {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(bytes)),
    })
}

pub struct Run<'a> {
    pub command: &'a str,
    /// Flags that determine the output, echoed into the CSV header.
    pub flags: &'a Value,
    /// Everything on the command line, recorded in the manifest.
    pub all_flags: &'a Value,
    pub seed: Option<u64>,
}

/// Writes `<out>` (CSV), `<stem>.json` and `<stem>.manifest.json`.
pub fn write_all(out: &Path, run: &Run, report: &Report, elapsed: Duration) -> std::io::Result<PathBuf> {
    let (command, flags) = (run.command, run.flags);
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let csv = csv_bytes(command, flags, report)?;
    let mirror = json!({
        "command": command,
        "flags": flags,
        "summary": report.summary,
        "columns": report.columns,
        "rows": report.rows,
        "extra": report.extra,
    });
    let json_bytes = serde_json::to_vec_pretty(&mirror)?;
    let outputs = vec![
        write_digest(out, &csv)?,
        write_digest(&sibling(out, "json"), &json_bytes)?,
    ];
    let manifest = RunManifest {
        command: command.to_string(),
        flags: run.all_flags.clone(),
        seed: run.seed,
        version: env!("CARGO_PKG_VERSION"),
        wall_time_secs: elapsed.as_secs_f64(),
        outputs,
    };
    let path = sibling(out, "manifest.json");
    fs::write(&path, serde_json::to_vec_pretty(&manifest)?)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_flag_header() {
        let mut r = Report::new(vec!["a", "b"]);
        r.push(vec![json!(1.5), json!("x")]);
        let bytes = csv_bytes("demo", &json!({"n": 3}), &r).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.starts_with("# riemann-lab"));
        assert!(text.contains("# n = 3\na,b\n1.5,x\n"));
    }

    #[test]
    fn non_finite_cells() {
        assert_eq!(num(f64::NEG_INFINITY), json!("-inf"));
        assert_eq!(cell(&num(0.1)), "0.1");
    }
}
