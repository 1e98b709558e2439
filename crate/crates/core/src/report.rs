//! Machine-readable results shared by the library checks and the CLI.

use std::fmt;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::integration::ScaledRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Degenerate,
    Inconclusive,
}

impl Status {
    /// Combine two statuses: failure dominates, then inconclusive, then
    /// degenerate.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Degenerate, _) | (_, Degenerate) => Degenerate,
            _ => Pass,
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Degenerate => "degenerate",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Scaled(ScaledRational),
    List(Vec<i64>),
    Text(String),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Bool(b) => f.write_str(if *b { "yes" } else { "no" }),
            Cell::Int(i) => write!(f, "{i}"),
            Cell::Scaled(s) => write!(f, "{s}"),
            Cell::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<ScaledRational> for Cell {
    fn from(s: ScaledRational) -> Self {
        Cell::Scaled(s)
    }
}

impl From<Status> for Cell {
    fn from(s: Status) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<Vec<i64>> for Cell {
    fn from(v: Vec<i64>) -> Self {
        Cell::List(v)
    }
}

/// An ordered record; serialized as a JSON object with keys in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Cell>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Cell> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Record {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RecordVisitor;
        impl<'de> Visitor<'de> for RecordVisitor {
            type Value = Record;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a record object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Record, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, Cell>()? {
                    out.push((k, v));
                }
                Ok(Record(out))
            }
        }
        deserializer.deserialize_map(RecordVisitor)
    }
}

/// Rows plus a verdict, as produced by every check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub rows: Vec<Record>,
    pub status: Status,
    pub counterexample: Option<String>,
}

impl Default for Outcome {
    fn default() -> Self {
        Outcome { rows: Vec::new(), status: Status::Pass, counterexample: None }
    }
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row(&mut self, r: Record) {
        self.rows.push(r);
    }

    /// Record a failure; the first counterexample is kept.
    pub fn fail(&mut self, counterexample: impl Into<String>) {
        self.status = Status::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample.into());
        }
    }

    /// Record a failure unless `ok`.
    pub fn require(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        if !ok {
            self.fail(counterexample());
        }
    }

    pub fn mark(&mut self, status: Status) {
        self.status = self.status.and(status);
    }

    pub fn absorb(&mut self, other: Outcome) {
        self.rows.extend(other.rows);
        if let Some(c) = other.counterexample {
            if self.counterexample.is_none() {
                self.counterexample = Some(c);
            }
        }
        self.status = self.status.and(other.status);
    }

    pub fn passed(&self) -> bool {
        !self.status.is_failure()
    }

    /// Prepend the cells of `tag` to every row.
    pub fn tagged(mut self, tag: &Record) -> Self {
        for r in &mut self.rows {
            let mut cells = tag.0.clone();
            cells.append(&mut r.0);
            r.0 = cells;
        }
        self
    }
}

/// Full CLI report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub parameters: Record,
    pub rows: Vec<Record>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Report {
    pub fn from_outcome(command: &str, parameters: Record, outcome: Outcome) -> Self {
        Report {
            command: command.to_string(),
            parameters,
            rows: outcome.rows,
            status: outcome.status,
            counterexample: outcome.counterexample,
        }
    }
}
