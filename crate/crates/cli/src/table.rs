//! CSV output: `#` comment block, header row, one line per grid point.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Default)]
pub struct Table {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

// shortest representation that parses back to the same f64
fn number(x: f64) -> String {
    format!("{x:?}")
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar).collect();
            out.push((prefix.to_string(), joined.join(" ")));
        }
        v => out.push((prefix.to_string(), scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => number(x),
            _ => n.to_string(),
        },
        Value::Null => "none".into(),
        other => other.to_string(),
    }
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table { header: header.iter().map(|s| s.as_ref().to_string()).collect(), ..Default::default() }
    }

    pub fn comment(&mut self, line: impl Into<String>) -> &mut Self {
        self.comments.push(line.into());
        self
    }

    pub fn param(&mut self, key: &str, value: f64) -> &mut Self {
        self.comment(format!("{key} = {}", number(value)))
    }

    /// Echoes every field of a parsed flag struct.
    pub fn echo<T: Serialize>(&mut self, args: &T) -> &mut Self {
        let value = serde_json::to_value(args).expect("flag structs serialize");
        let mut pairs = Vec::new();
        flatten("", &value, &mut pairs);
        for (k, v) in pairs {
            self.comment(format!("{k} = {v}"));
        }
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<f64>>) {
        for row in rows {
            self.push(row);
        }
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for c in &self.comments {
            writeln!(w, "# {c}")?;
        }
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|x| number(*x)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        w.flush()
    }
}

/// Where a table goes: an explicit file, a file in the default directory, or stdout.
pub fn destination(output: Option<&Path>, dir: Option<&Path>, name: &str) -> Option<PathBuf> {
    match (output, dir) {
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(d)) => Some(d.join(format!("{name}.csv"))),
        (None, None) => None,
    }
}

pub fn emit(table: &Table, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            let mut buf = Vec::new();
            table.write_to(&mut buf)?;
            fs::write(p, buf)
        }
        None => table.write_to(io::stdout().lock()),
    }
}
