//! Self-describing output records and their json-lines / csv writers.

use std::fmt::Display;
use std::io::Write;

use serde_json::{Map, Value};
use sha1::{Digest, Sha1};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Git blob hash (`sha1("blob <len>\0" + content)`) as lowercase hex.
pub fn git_hash(content: &[u8]) -> String {
    let mut h = Sha1::new();
    h.update(format!("blob {}\0", content.len()).as_bytes());
    h.update(content);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Common header shared by every record of one invocation.
#[derive(Clone, Debug)]
pub struct Header {
    command: String,
    config: Value,
    input_hash: String,
}

impl Header {
    pub fn new(command: &str, config: Value) -> Self {
        let canonical = serde_json::json!({ "command": command, "config": config });
        let input_hash = git_hash(canonical.to_string().as_bytes());
        Self { command: command.to_string(), config, input_hash }
    }

    pub fn record(&self) -> Record {
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("version".into(), VERSION.into());
        m.insert("input_hash".into(), self.input_hash.clone().into());
        m.insert("config".into(), self.config.clone());
        Record(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record(pub Map<String, Value>);

impl Record {
    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.insert(key.into(), v.into());
        self
    }

    /// Exact values (big integers, rationals) go out as strings.
    pub fn exact(self, key: &str, v: impl Display) -> Self {
        self.set(key, v.to_string())
    }

    /// Finite floats as numbers; NaN and infinities as strings, which json
    /// cannot carry.
    pub fn real(self, key: &str, v: f64) -> Self {
        if v.is_finite() {
            self.set(key, v)
        } else {
            self.set(key, v.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
pub enum Format {
    #[value(name = "json-lines", alias = "jsonl", alias = "json")]
    #[serde(rename = "json-lines")]
    JsonLines,
    #[value(name = "csv")]
    #[serde(rename = "csv")]
    Csv,
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        _ => v.to_string(),
    }
}

/// Writes records in the chosen format. The csv header comes from the first
/// record; every command emits one schema per run.
pub fn write_records(out: &mut dyn Write, format: Format, records: &[Record]) -> std::io::Result<()> {
    match format {
        Format::JsonLines => {
            for r in records {
                serde_json::to_writer(&mut *out, &r.0)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Csv => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let keys: Vec<&String> = first.0.keys().collect();
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&keys)?;
            for r in records {
                w.write_record(keys.iter().map(|k| r.0.get(*k).map(csv_cell).unwrap_or_default()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn git_hash_matches_git() {
        // `printf 'hello\n' | git hash-object --stdin`
        assert_eq!(git_hash(b"hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
        assert_eq!(git_hash(b""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
    }

    #[test]
    fn csv_quotes_nested_values() {
        let h = Header::new("x", serde_json::json!({"n": 3, "dist": "1/2,0,1/2"}));
        let r = h.record().exact("p", "1/4").real("f", 0.25);
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Csv, &[r]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "command,version,input_hash,config,p,f");
        assert!(lines.next().unwrap().contains("\"{\"\"n\"\":3,\"\"dist\"\":\"\"1/2,0,1/2\"\"}\",1/4,0.25"));
    }
}
