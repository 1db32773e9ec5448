use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{Map, Value as Json};

use super::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A field value. Numbers are kept as decimal strings in every format.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(String),
    Str(String),
    Bool(bool),
    Missing,
    /// Rendered as `a:b,c:d` in text and CSV, as an array of objects in JSON.
    Rows(Vec<Record>),
}

pub type Record = Vec<(&'static str, Value)>;

pub fn num(x: impl ToString) -> Value {
    Value::Num(x.to_string())
}

pub fn text(x: impl ToString) -> Value {
    Value::Str(x.to_string())
}

pub fn opt_num(x: Option<&BigUint>) -> Value {
    x.map_or(Value::Missing, num)
}

pub fn witness_rows(witness: &[(BigUint, BigUint)]) -> Value {
    Value::Rows(
        witness
            .iter()
            .map(|(d, o)| vec![("divisor", num(d)), ("order", num(o))])
            .collect(),
    )
}

fn flat(v: &Value) -> String {
    match v {
        Value::Num(s) | Value::Str(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Missing => "none".into(),
        Value::Rows(rows) => rows
            .iter()
            .map(|r| r.iter().map(|(_, v)| flat(v)).collect::<Vec<_>>().join(":"))
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn json(v: &Value) -> Json {
    match v {
        Value::Num(s) | Value::Str(s) => Json::String(s.clone()),
        Value::Bool(b) => Json::Bool(*b),
        Value::Missing => Json::Null,
        Value::Rows(rows) => Json::Array(rows.iter().map(json_record).collect()),
    }
}

fn json_record(r: &Record) -> Json {
    Json::Object(r.iter().map(|(k, v)| (k.to_string(), json(v))).collect::<Map<_, _>>())
}

fn text_line(r: &Record) -> String {
    r.iter()
        .map(|(k, v)| {
            let s = flat(v);
            if s.contains(char::is_whitespace) {
                format!("{k}=\"{s}\"")
            } else {
                format!("{k}={s}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes the records: one `key=value` line or JSON object per record, or a
/// CSV table with a header taken from the first record.
pub fn render(format: Format, records: &[Record], out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for r in records {
                writeln!(out, "{}", text_line(r))?;
            }
        }
        Format::Json => {
            for r in records {
                writeln!(out, "{}", json_record(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.iter().map(|(_, v)| flat(v)))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
