//! Verdict records and their JSON Lines, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub result_id: String,
    /// Name of the result being checked, e.g. `"Lemma 3"`.
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub params: BTreeMap<String, String>,
}

impl Record {
    pub fn new(result_id: impl Into<String>, anchor: impl Into<String>, verdict: Verdict) -> Self {
        Record {
            result_id: result_id.into(),
            anchor: anchor.into(),
            verdict,
            witness: None,
            params: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    /// `k=v;k=v` in key order.
    pub fn params_joined(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

pub const CSV_HEADER: [&str; 5] = ["result_id", "paper_anchor", "verdict", "witness", "params"];

/// JSON Lines: one object per record.
pub fn to_json_lines(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn to_csv(records: &[Record]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("write to memory");
    for r in records {
        w.write_record([
            r.result_id.as_str(),
            r.anchor.as_str(),
            r.verdict.as_str(),
            r.witness.as_deref().unwrap_or(""),
            &r.params_joined(),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

pub fn to_text(records: &[Record]) -> String {
    let id_width = records.iter().map(|r| r.result_id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in records {
        let verdict = r.verdict.as_str().to_uppercase();
        out.push_str(&format!("{verdict:<12} {:<id_width$}  [{}]  {}", r.result_id, r.anchor, r.params_joined()));
        if let Some(w) = &r.witness {
            out.push_str(&format!("  witness: {w}"));
        }
        out.push('\n');
    }
    out
}

pub fn render(records: &[Record], format: Format) -> String {
    match format {
        Format::Json => to_json_lines(records),
        Format::Csv => to_csv(records),
        Format::Text => to_text(records),
    }
}

/// Parse CSV produced by [`to_csv`] back into records.
pub fn from_csv(text: &str) -> Result<Vec<Record>, csv::Error> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row?;
        let verdict = match &row[2] {
            "pass" => Verdict::Pass,
            "fail" => Verdict::Fail,
            _ => Verdict::Inconclusive,
        };
        let params = row[4]
            .split(';')
            .filter(|s| !s.is_empty())
            .filter_map(|kv| kv.split_once('='))
            .map(|(k, v)| (k.to_owned(), v.to_owned()))
            .collect();
        out.push(Record {
            result_id: row[0].to_owned(),
            anchor: row[1].to_owned(),
            verdict,
            witness: (!row[3].is_empty()).then(|| row[3].to_owned()),
            params,
        });
    }
    Ok(out)
}

/// Exit status for a run.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// A failed claim outranks an inconclusive one.
pub fn exit_code(records: &[Record]) -> i32 {
    match records.iter().map(|r| r.verdict).max() {
        Some(Verdict::Fail) => EXIT_FAILED,
        Some(Verdict::Inconclusive) => EXIT_INCONCLUSIVE,
        _ => EXIT_PASS,
    }
}
