use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use taut_core::report::{Check, CheckStatus};

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValueRecord {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub model: String,
    pub digest: String,
    pub values: Vec<ValueRecord>,
    pub checks: Vec<CheckRecord>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

pub fn digest(parts: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for p in parts {
        hasher.update((p.len() as u64).to_le_bytes());
        hasher.update(p);
    }
    hex::encode(hasher.finalize())
}

impl Report {
    pub fn new(command: &str, model: String, digest: String) -> Self {
        Self {
            command: command.to_string(),
            model,
            digest,
            values: Vec::new(),
            checks: Vec::new(),
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl ToString) {
        self.values.push(ValueRecord {
            name: key.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(CheckRecord {
            name: c.name,
            status: c.status.as_str(),
            detail: c.detail,
        });
    }

    pub fn checks(&mut self, cs: impl IntoIterator<Item = Check>) {
        for c in cs {
            self.check(c);
        }
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn table(&mut self, title: impl Into<String>, headers: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
        });
    }

    pub fn count(&self, status: CheckStatus) -> usize {
        self.checks.iter().filter(|c| c.status == status.as_str()).count()
    }

    pub fn failed(&self) -> bool {
        self.count(CheckStatus::Fail) > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "model:   {}", self.model);
        let _ = writeln!(out, "digest:  {}", self.digest);
        if !self.values.is_empty() {
            out.push('\n');
            let width = self.values.iter().map(|v| v.name.len()).max().unwrap_or(0);
            for v in &self.values {
                let _ = writeln!(out, "  {:<width$}  {}", v.name, v.value);
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.title);
            let mut widths: Vec<usize> = t.headers.iter().map(String::len).collect();
            for r in &t.rows {
                for (i, cell) in r.iter().enumerate() {
                    widths[i] = widths[i].max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "  {}", line(&t.headers));
            for r in &t.rows {
                let _ = writeln!(out, "  {}", line(r));
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks\n");
            for c in &self.checks {
                let _ = write!(out, "  [{:<12}] {}", c.status, c.name);
                if let Some(d) = &c.detail {
                    let _ = write!(out, "  ({d})");
                }
                out.push('\n');
            }
        }
        if !self.notes.is_empty() {
            out.push_str("\nnotes\n");
            for n in &self.notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        let _ = writeln!(
            out,
            "\nsummary: {} pass, {} fail, {} not-computed",
            self.count(CheckStatus::Pass),
            self.count(CheckStatus::Fail),
            self.count(CheckStatus::NotComputed)
        );
        out
    }
}
