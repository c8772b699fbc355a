//! Command results as ordered records, rendered for people or for tools.
//!
//! The machine format is line-oriented `key: value` pairs with one blank line
//! between records. It is stable within a release.

use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub subject: String,
    pub ok: bool,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>, subject: impl Into<String>) -> Self {
        Record { kind: kind.into(), subject: subject.into(), ok: true, fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        // keep every value on one line
        let value = value.to_string().replace('\n', " ");
        self.fields.push((key.into(), value));
    }

    pub fn fail(mut self, error: impl ToString) -> Self {
        self.ok = false;
        self.push("error", error);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.ok)
    }

    pub fn first_failure(&self) -> Option<&Record> {
        self.records.iter().find(|r| !r.ok)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Machine => self.machine(),
        }
    }

    fn machine(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.records.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "record: {}", r.kind);
            let _ = writeln!(out, "subject: {}", r.subject);
            let _ = writeln!(out, "status: {}", if r.ok { "ok" } else { "error" });
            for (k, v) in &r.fields {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }

    fn human(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(out, "[{}] {} {}", if r.ok { "ok" } else { "FAILED" }, r.kind, r.subject);
            let width = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &r.fields {
                let _ = writeln!(out, "    {k:<width$}  {v}");
            }
        }
        out
    }
}
