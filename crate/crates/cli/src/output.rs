use std::fmt::Write as _;

use clap::ValueEnum;
use metrized_green::{DenseMatrix, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Pretty,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    mode: &'a str,
    payload: Value,
}

pub fn envelope(command: &str, mode: &str, payload: Value) -> String {
    let env = Envelope {
        command,
        mode,
        payload,
    };
    serde_json::to_string_pretty(&env).expect("envelope serializes")
}

pub fn matrix_json<S: Scalar>(labels: &[String], m: &DenseMatrix<S>) -> Value {
    let rows: Vec<Vec<String>> = m
        .rows()
        .map(|row| row.iter().map(Scalar::to_text).collect())
        .collect();
    json!({ "labels": labels, "rows": rows })
}

pub fn matrix_csv<S: Scalar>(labels: &[String], m: &DenseMatrix<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ",{}", labels.join(","));
    for (label, row) in labels.iter().zip(m.rows()) {
        let cells: Vec<String> = row.iter().map(Scalar::to_text).collect();
        let _ = writeln!(out, "{label},{}", cells.join(","));
    }
    out
}

pub fn matrix_pretty<S: Scalar>(labels: &[String], m: &DenseMatrix<S>) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|row| row.iter().map(Scalar::to_text).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .chain(labels)
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let label_width = labels.iter().map(|s| s.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    let _ = write!(out, "{:label_width$}", "");
    for l in labels {
        let _ = write!(out, "  {l:>width$}");
    }
    out.push('\n');
    for (label, row) in labels.iter().zip(&cells) {
        let _ = write!(out, "{label:label_width$}");
        for c in row {
            let _ = write!(out, "  {c:>width$}");
        }
        out.push('\n');
    }
    out
}
