//! Output formats and float rendering.

use clap::ValueEnum;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// `x` with 15 significant digits: positional between `1e-5` and `1e15`,
/// scientific otherwise.
pub fn sig15(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.14e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-5..15).contains(&exp) {
        format!("{:.*}", (14 - exp) as usize, x)
    } else {
        sci
    }
}

/// `x` rounded to 15 significant digits, so JSON prints at most that many.
pub fn round15(x: f64) -> f64 {
    sig15(x).parse().unwrap_or(x)
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    Ok(out)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::usage(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::usage(e.to_string()))
}

pub fn from_csv<T: DeserializeOwned>(text: &str) -> Result<Vec<T>, CliError> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}
