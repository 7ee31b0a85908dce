//! Rendering of records as JSON lines, CSV or plain text.

use clap::ValueEnum;
use num_bigint::BigInt;
use serde_json::{Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Exact JSON number for an arbitrary-precision integer.
pub fn big(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

/// CSV text for a header and rows, quoting as needed.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// One compact JSON object per line.
pub fn json_lines(values: &[Value]) -> String {
    values.iter().map(|v| format!("{v}\n")).collect()
}
