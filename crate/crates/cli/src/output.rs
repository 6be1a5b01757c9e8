use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;
use trijac::json::int_to_number;
use trijac::{Integer, SequenceId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Space separated values.
    Plain,
    /// Comma separated with a header row.
    Csv,
    /// A single JSON document.
    Json,
}

pub fn ints_json(xs: &[Integer]) -> Value {
    Value::Array(xs.iter().map(|x| Value::Number(int_to_number(x))).collect())
}

pub fn plain_list(xs: &[Integer]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    parts.join(" ")
}

/// `seq,n,value` table.
pub fn csv_terms(seq: SequenceId, first: u64, xs: &[Integer]) -> String {
    let mut out = String::from("seq,n,value\n");
    for (i, x) in xs.iter().enumerate() {
        writeln!(out, "{seq},{},{x}", first + i as u64).unwrap();
    }
    out
}

pub fn to_json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
